#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hpcause {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in model, formula, query, state or CQBF text. `offset` is a
// byte offset into the text handed to the parser.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

  // Same error, shifted by `base` bytes (used when a field is parsed out of a
  // larger file).
  ParseError shifted(std::size_t base) const;

 private:
  std::string detail_;
  std::size_t offset_;
};

// A structurally invalid signature or causal model (cycle, missing equation,
// out-of-range equation value, duplicate names, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

// An argument that does not fit the model it is used with: unknown or
// exogenous variable, out-of-range value, partial context, malformed witness,
// bad probabilities.
class QueryError : public Error {
 public:
  using Error::Error;
};

// Raised when a search would need more solver calls than it was allowed.
// Never reported as a negative verdict.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
};

// Input larger than a configured hard limit (e.g. too many QBF variables).
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace hpcause
