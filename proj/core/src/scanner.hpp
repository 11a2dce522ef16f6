#pragma once

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>

#include "hpcause/error.hpp"
#include "hpcause/signature.hpp"

namespace hpcause::detail {

// Hand-rolled tokenizer shared by the expression, formula and assignment
// parsers. Whitespace is skipped before every token.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::size_t pos() {
    skip_ws();
    return pos_;
  }
  bool at_end() { return pos() >= text_.size(); }

  bool peek_is(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }
  bool consume(std::string_view tok) {
    if (!peek_is(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!consume(tok)) fail("expected '" + std::string(tok) + "'");
  }

  bool peek_identifier() {
    skip_ws();
    return pos_ < text_.size() && is_ident_start(text_[pos_]);
  }
  std::optional<std::string_view> identifier() {
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) return std::nullopt;
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  bool peek_integer() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
    return c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
  }
  std::optional<Value> integer() {
    if (!peek_integer()) return std::nullopt;
    std::size_t start = pos_;
    if (text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    Value v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc{}) fail_at(start, "integer out of range");
    return v;
  }

  Value expect_integer() {
    auto v = integer();
    if (!v) fail("expected an integer");
    return *v;
  }

  VarId expect_variable(const Signature& sig) {
    std::size_t at = pos();
    auto name = identifier();
    if (!name) fail("expected a variable name");
    auto id = sig.find(*name);
    if (!id) fail_at(at, "unknown variable '" + std::string(*name) + "'");
    return *id;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string& msg) { fail_at(pos(), msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) { throw ParseError(msg, at); }

 private:
  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace hpcause::detail
