#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpcause/model.hpp"
#include "hpcause/signature.hpp"

namespace hpcause {

enum class EventOp : std::uint8_t { kPrim, kNot, kAnd, kOr };

struct EventInstr {
  EventOp op;
  std::uint32_t var = 0;  // kPrim
  std::int32_t arg = 0;   // kPrim: value; kAnd/kOr: arity

  friend bool operator==(const EventInstr&, const EventInstr&) = default;
};

// Boolean combination of primitive events X = x, in postfix form.
class EventFormula {
 public:
  static EventFormula primitive(VarId var, Value value);
  static EventFormula negate(const EventFormula& f);
  // Arity must be at least one.
  static EventFormula all_of(std::span<const EventFormula> parts);
  static EventFormula any_of(std::span<const EventFormula> parts);
  static EventFormula both(const EventFormula& a, const EventFormula& b);
  static EventFormula either(const EventFormula& a, const EventFormula& b);

  // `state` indexed by VarId.
  bool holds(std::span<const Value> state) const;

  // Replaces every primitive on `from[i]` by one on `to[i]`.
  EventFormula renamed(std::span<const VarId> from, std::span<const VarId> to) const;

  // Throws QueryError if a primitive names an exogenous variable or an
  // out-of-range value.
  void check(const Signature& sig) const;

  std::vector<VarId> variables() const;
  std::span<const EventInstr> code() const { return code_; }

  std::string to_string(const Signature& sig) const;

  friend bool operator==(const EventFormula&, const EventFormula&) = default;

 private:
  explicit EventFormula(std::vector<EventInstr> code) : code_(std::move(code)) {}
  static EventFormula nary(EventOp op, std::span<const EventFormula> parts);

  std::vector<EventInstr> code_;
};

struct EventParseOptions {
  // Accept a bare identifier `p` as `p=1` (propositional matrices).
  bool bare_propositions = false;
};

// Grammar (whitespace-insensitive):
//   f := IDENT '=' INT | '!' f | '(' f ')' | '(' f ('&' f)+ ')' | '(' f ('|' f)+ ')'
// Abbreviations, expanded while parsing:
//   X != v            !(X=v)
//   X = Y, X != Y     disjunction over the ranges of X and Y
//   X >= v, X <= v, X > v, X < v   disjunction of X=a over matching a
// Throws ParseError (unknown names and out-of-range values included).
EventFormula parse_event_formula(std::string_view text, const Signature& sig, EventParseOptions opts = {});

// `X=v, Y=w, ...` (commas or '&' between items) over variables of `kind`.
// Throws ParseError.
Assignment parse_assignment(std::string_view text, const Signature& sig, VarKind kind = VarKind::kEndogenous);

// A Boolean combination of basic causal formulas [Y <- y] phi.
class CausalFormula {
 public:
  enum class Kind { kEvent, kIntervened, kNot, kAnd, kOr };

  static CausalFormula event(EventFormula f);
  // Throws QueryError if `assignment` repeats a variable.
  static CausalFormula intervened(Assignment assignment, EventFormula f);
  static CausalFormula negate(CausalFormula f);
  static CausalFormula all_of(std::vector<CausalFormula> parts);
  static CausalFormula any_of(std::vector<CausalFormula> parts);

  Kind kind() const { return node_->kind; }
  const EventFormula& effect() const { return node_->effect; }
  const Assignment& assignment() const { return node_->assignment; }
  const std::vector<CausalFormula>& children() const { return node_->children; }

  std::string to_string(const Signature& sig) const;

 private:
  struct Node {
    Kind kind;
    EventFormula effect = EventFormula::primitive(VarId{}, 0);
    Assignment assignment;
    std::vector<CausalFormula> children;
  };
  explicit CausalFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// Event grammar extended with `'[' IDENT '<-' INT (',' IDENT '<-' INT)* ']' f`.
CausalFormula parse_causal_formula(std::string_view text, const Signature& sig);

// (M, u) |= f. Throws QueryError for formulas that do not fit the model.
bool satisfies(const CausalModel& model, const Context& context, const CausalFormula& f);

}  // namespace hpcause
