#include "hpcause/expression.hpp"

#include <algorithm>
#include <array>
#include <cassert>

#include "hpcause/error.hpp"
#include "scanner.hpp"

namespace hpcause {

namespace {

std::uint32_t depth_of(std::span<const ExprInstr> code) {
  std::uint32_t depth = 0, max_depth = 0;
  for (const auto& in : code) {
    switch (in.op) {
      case ExprOp::kConst:
      case ExprOp::kVar:
        ++depth;
        break;
      case ExprOp::kEquals:
        depth -= 1;
        break;
      case ExprOp::kNot:
      case ExprOp::kAtLeast:
        break;
      case ExprOp::kIte:
        depth -= 2;
        break;
      case ExprOp::kAnd:
      case ExprOp::kOr:
      case ExprOp::kSum:
        depth -= static_cast<std::uint32_t>(in.arg) - 1;
        break;
    }
    max_depth = std::max(max_depth, depth);
  }
  return max_depth;
}

template <typename Stack>
Value run(std::span<const ExprInstr> code, std::span<const Value> state, Stack& st) {
  std::size_t sp = 0;
  for (const auto& in : code) {
    switch (in.op) {
      case ExprOp::kConst:
        st[sp++] = in.arg;
        break;
      case ExprOp::kVar:
        st[sp++] = state[static_cast<std::size_t>(in.arg)];
        break;
      case ExprOp::kEquals:
        --sp;
        st[sp - 1] = st[sp - 1] == st[sp] ? 1 : 0;
        break;
      case ExprOp::kNot:
        st[sp - 1] = st[sp - 1] == 0 ? 1 : 0;
        break;
      case ExprOp::kAtLeast:
        st[sp - 1] = st[sp - 1] >= in.arg ? 1 : 0;
        break;
      case ExprOp::kIte: {
        Value else_v = st[--sp];
        Value then_v = st[--sp];
        st[sp - 1] = st[sp - 1] != 0 ? then_v : else_v;
        break;
      }
      case ExprOp::kAnd: {
        std::size_t n = static_cast<std::size_t>(in.arg);
        Value r = 1;
        for (std::size_t i = sp - n; i < sp; ++i) r &= st[i] != 0 ? 1 : 0;
        sp -= n;
        st[sp++] = r;
        break;
      }
      case ExprOp::kOr: {
        std::size_t n = static_cast<std::size_t>(in.arg);
        Value r = 0;
        for (std::size_t i = sp - n; i < sp; ++i) r |= st[i] != 0 ? 1 : 0;
        sp -= n;
        st[sp++] = r;
        break;
      }
      case ExprOp::kSum: {
        std::size_t n = static_cast<std::size_t>(in.arg);
        Value r = 0;
        for (std::size_t i = sp - n; i < sp; ++i) r += st[i];
        sp -= n;
        st[sp++] = r;
        break;
      }
    }
  }
  assert(sp == 1);
  return st[0];
}

}  // namespace

Expression::Expression(std::vector<ExprInstr> code) : code_(std::move(code)) {
  for (const auto& in : code_)
    if (in.op == ExprOp::kVar) refs_.push_back(VarId{static_cast<std::uint32_t>(in.arg)});
  std::sort(refs_.begin(), refs_.end());
  refs_.erase(std::unique(refs_.begin(), refs_.end()), refs_.end());
  max_depth_ = depth_of(code_);
}

Expression Expression::constant(Value v) { return Expression({{ExprOp::kConst, v}}); }

Expression Expression::variable(VarId id) {
  return Expression({{ExprOp::kVar, static_cast<std::int32_t>(id.index)}});
}

Expression Expression::equals(const Expression& a, const Expression& b) {
  std::vector<ExprInstr> code = a.code_;
  code.insert(code.end(), b.code_.begin(), b.code_.end());
  code.push_back({ExprOp::kEquals, 0});
  return Expression(std::move(code));
}

Expression Expression::negate(const Expression& a) {
  std::vector<ExprInstr> code = a.code_;
  code.push_back({ExprOp::kNot, 0});
  return Expression(std::move(code));
}

Expression Expression::nary(ExprOp op, std::span<const Expression> parts) {
  if (parts.size() == 1) return parts[0];
  std::vector<ExprInstr> code;
  for (const auto& p : parts) code.insert(code.end(), p.code_.begin(), p.code_.end());
  code.push_back({op, static_cast<std::int32_t>(parts.size())});
  return Expression(std::move(code));
}

Expression Expression::all_of(std::span<const Expression> parts) {
  return parts.empty() ? constant(1) : nary(ExprOp::kAnd, parts);
}

Expression Expression::any_of(std::span<const Expression> parts) {
  return parts.empty() ? constant(0) : nary(ExprOp::kOr, parts);
}

Expression Expression::sum(std::span<const Expression> parts) {
  return parts.empty() ? constant(0) : nary(ExprOp::kSum, parts);
}

Expression Expression::ite(const Expression& cond, const Expression& then_e, const Expression& else_e) {
  std::vector<ExprInstr> code = cond.code_;
  code.insert(code.end(), then_e.code_.begin(), then_e.code_.end());
  code.insert(code.end(), else_e.code_.begin(), else_e.code_.end());
  code.push_back({ExprOp::kIte, 0});
  return Expression(std::move(code));
}

Expression Expression::at_least(const Expression& a, Value threshold) {
  std::vector<ExprInstr> code = a.code_;
  code.push_back({ExprOp::kAtLeast, threshold});
  return Expression(std::move(code));
}

Value Expression::evaluate(std::span<const Value> state) const {
  if (max_depth_ <= 32) {
    std::array<Value, 32> st;
    return run(code_, state, st);
  }
  std::vector<Value> st(max_depth_);
  return run(code_, state, st);
}

std::vector<VarId> Expression::live_references(std::span<const std::optional<Value>> known) const {
  // Partial evaluation: each stack entry is a constant or the set of
  // variables it depends on.
  struct Item {
    std::optional<Value> value;
    std::vector<VarId> deps;
  };
  std::vector<Item> st;
  auto merge = [](std::vector<VarId>& into, const std::vector<VarId>& from) {
    into.insert(into.end(), from.begin(), from.end());
  };
  for (const auto& in : code_) {
    switch (in.op) {
      case ExprOp::kConst:
        st.push_back({in.arg, {}});
        break;
      case ExprOp::kVar: {
        VarId v{static_cast<std::uint32_t>(in.arg)};
        if (v.index < known.size() && known[v.index])
          st.push_back({*known[v.index], {}});
        else
          st.push_back({std::nullopt, {v}});
        break;
      }
      case ExprOp::kEquals: {
        Item b = std::move(st.back());
        st.pop_back();
        Item& a = st.back();
        if (a.value && b.value)
          a.value = *a.value == *b.value ? 1 : 0;
        else {
          a.value.reset();
          merge(a.deps, b.deps);
        }
        break;
      }
      case ExprOp::kNot:
        if (st.back().value) st.back().value = *st.back().value == 0 ? 1 : 0;
        break;
      case ExprOp::kAtLeast:
        if (st.back().value) st.back().value = *st.back().value >= in.arg ? 1 : 0;
        break;
      case ExprOp::kIte: {
        Item e = std::move(st.back());
        st.pop_back();
        Item t = std::move(st.back());
        st.pop_back();
        Item& c = st.back();
        if (c.value) {
          c = *c.value != 0 ? std::move(t) : std::move(e);
        } else if (t.value && e.value && *t.value == *e.value) {
          c = std::move(t);
        } else {
          merge(c.deps, t.deps);
          merge(c.deps, e.deps);
        }
        break;
      }
      case ExprOp::kAnd:
      case ExprOp::kOr: {
        // A constant operand equal to `dominant` decides the result.
        const Value dominant = in.op == ExprOp::kAnd ? 0 : 1;
        const std::size_t n = static_cast<std::size_t>(in.arg);
        Item r{std::nullopt, {}};
        bool decided = false, all_const = true;
        for (std::size_t i = st.size() - n; i < st.size(); ++i) {
          if (st[i].value) {
            decided = decided || (*st[i].value != 0 ? 1 : 0) == dominant;
          } else {
            all_const = false;
            merge(r.deps, st[i].deps);
          }
        }
        st.resize(st.size() - n);
        if (decided) r = {dominant, {}};
        else if (all_const) r = {1 - dominant, {}};
        st.push_back(std::move(r));
        break;
      }
      case ExprOp::kSum: {
        const std::size_t n = static_cast<std::size_t>(in.arg);
        Item r{0, {}};
        for (std::size_t i = st.size() - n; i < st.size(); ++i) {
          if (st[i].value && r.value)
            *r.value += *st[i].value;
          else if (!st[i].value)
            r.value.reset();
          merge(r.deps, st[i].deps);
        }
        st.resize(st.size() - n);
        st.push_back(std::move(r));
        break;
      }
    }
  }
  std::vector<VarId> out = st.empty() || st.back().value ? std::vector<VarId>{} : std::move(st.back().deps);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Expression::references(VarId id) const { return std::binary_search(refs_.begin(), refs_.end(), id); }

std::string Expression::to_string(const Signature& sig) const {
  std::vector<std::string> st;
  auto join = [&](std::size_t n, std::string_view sep) {
    std::string out = "(";
    for (std::size_t i = st.size() - n; i < st.size(); ++i) {
      if (i != st.size() - n) out += sep;
      out += st[i];
    }
    out += ")";
    st.resize(st.size() - n);
    st.push_back(std::move(out));
  };
  for (const auto& in : code_) {
    switch (in.op) {
      case ExprOp::kConst:
        st.push_back(std::to_string(in.arg));
        break;
      case ExprOp::kVar:
        st.push_back(sig.name(VarId{static_cast<std::uint32_t>(in.arg)}));
        break;
      case ExprOp::kEquals:
        join(2, " = ");
        break;
      case ExprOp::kNot:
        st.back() = "!" + st.back();
        break;
      case ExprOp::kAtLeast:
        st.back() = "(" + st.back() + " >= " + std::to_string(in.arg) + ")";
        break;
      case ExprOp::kIte: {
        std::string e = std::move(st.back());
        st.pop_back();
        std::string t = std::move(st.back());
        st.pop_back();
        st.back() = "ite(" + st.back() + ", " + t + ", " + e + ")";
        break;
      }
      case ExprOp::kAnd:
        join(static_cast<std::size_t>(in.arg), " & ");
        break;
      case ExprOp::kOr:
        join(static_cast<std::size_t>(in.arg), " | ");
        break;
      case ExprOp::kSum:
        join(static_cast<std::size_t>(in.arg), " + ");
        break;
    }
  }
  return st.back();
}

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const Signature& sig) : sc_(text), sig_(sig) {}

  Expression parse_all() {
    Expression e = parse();
    sc_.expect_end();
    return e;
  }

 private:
  Expression parse() {
    if (sc_.consume("!")) return Expression::negate(parse());
    if (auto v = sc_.integer()) return Expression::constant(*v);
    if (sc_.consume("(")) return parse_group();
    std::size_t at = sc_.pos();
    auto name = sc_.identifier();
    if (!name) sc_.fail("expected an expression");
    if (*name == "ite" && sc_.peek_is("(")) {
      sc_.expect("(");
      Expression c = parse();
      sc_.expect(",");
      Expression t = parse();
      sc_.expect(",");
      Expression e = parse();
      sc_.expect(")");
      return Expression::ite(c, t, e);
    }
    auto id = sig_.find(*name);
    if (!id) sc_.fail_at(at, "unknown variable '" + std::string(*name) + "'");
    return Expression::variable(*id);
  }

  // After '('.
  Expression parse_group() {
    Expression first = parse();
    if (sc_.consume(")")) return first;
    if (sc_.consume(">=")) {
      Value k = sc_.expect_integer();
      sc_.expect(")");
      return Expression::at_least(first, k);
    }
    if (sc_.consume("=")) {
      Expression second = parse();
      sc_.expect(")");
      return Expression::equals(first, second);
    }
    std::string_view op;
    for (std::string_view cand : {"&", "|", "+"})
      if (sc_.peek_is(cand)) op = cand;
    if (op.empty()) sc_.fail("expected an operator or ')'");
    std::vector<Expression> parts{std::move(first)};
    while (sc_.consume(op)) parts.push_back(parse());
    if (!sc_.peek_is(")")) {
      for (std::string_view other : {"&", "|", "+", "=", ">="})
        if (sc_.peek_is(other)) sc_.fail("mixed operators need explicit parentheses");
    }
    sc_.expect(")");
    if (op == "&") return Expression::all_of(parts);
    if (op == "|") return Expression::any_of(parts);
    return Expression::sum(parts);
  }

  detail::Scanner sc_;
  const Signature& sig_;
};

}  // namespace

Expression parse_expression(std::string_view text, const Signature& sig) {
  return ExpressionParser(text, sig).parse_all();
}

}  // namespace hpcause
