#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpcause/signature.hpp"

namespace hpcause {

enum class ExprOp : std::uint8_t {
  kConst,    // arg = value
  kVar,      // arg = variable index
  kEquals,   // pops 2
  kNot,      // pops 1
  kAnd,      // arg = arity
  kOr,       // arg = arity
  kIte,      // pops 3: cond, then, else
  kSum,      // arg = arity
  kAtLeast,  // arg = threshold, pops 1
};

struct ExprInstr {
  ExprOp op;
  std::int32_t arg = 0;

  friend bool operator==(const ExprInstr&, const ExprInstr&) = default;
};

// Right-hand side of a structural equation. Stored as postfix code so that
// evaluation inside the witness search is a flat loop; the tree shape is
// recovered for printing.
//
// Boolean nodes (=, !, &, |, >=) yield 0 or 1 and treat any nonzero operand as
// true.
class Expression {
 public:
  Expression() : Expression(constant(0)) {}

  static Expression constant(Value v);
  static Expression variable(VarId id);
  static Expression equals(const Expression& a, const Expression& b);
  static Expression negate(const Expression& a);
  static Expression all_of(std::span<const Expression> parts);
  static Expression any_of(std::span<const Expression> parts);
  static Expression ite(const Expression& cond, const Expression& then_e, const Expression& else_e);
  static Expression sum(std::span<const Expression> parts);
  static Expression at_least(const Expression& a, Value threshold);

  // `state` is indexed by VarId and must cover every referenced variable.
  Value evaluate(std::span<const Value> state) const;

  // Sorted, duplicate-free.
  const std::vector<VarId>& references() const { return refs_; }
  bool references(VarId id) const;

  // Variables the value can still depend on once the variables with a value
  // in `known` (indexed by VarId) are fixed to it. Sorted, duplicate-free, and
  // a subset of references().
  std::vector<VarId> live_references(std::span<const std::optional<Value>> known) const;

  std::span<const ExprInstr> code() const { return code_; }

  std::string to_string(const Signature& sig) const;

  friend bool operator==(const Expression& a, const Expression& b) { return a.code_ == b.code_; }

 private:
  Expression(std::vector<ExprInstr> code);
  static Expression nary(ExprOp op, std::span<const Expression> parts);

  std::vector<ExprInstr> code_;
  std::vector<VarId> refs_;
  std::uint32_t max_depth_ = 1;
};

// Grammar (whitespace-insensitive):
//   e := INT | IDENT | '!' e | 'ite' '(' e ',' e ',' e ')'
//      | '(' e ')' | '(' e '=' e ')' | '(' e '>=' INT ')'
//      | '(' e ('&' e)+ ')' | '(' e ('|' e)+ ')' | '(' e ('+' e)+ ')'
// Identifiers must name variables of `sig`. Throws ParseError.
Expression parse_expression(std::string_view text, const Signature& sig);

}  // namespace hpcause
