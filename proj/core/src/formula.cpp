#include "hpcause/formula.hpp"

#include <algorithm>
#include <array>
#include <cassert>

#include "hpcause/error.hpp"
#include "scanner.hpp"

namespace hpcause {

EventFormula EventFormula::primitive(VarId var, Value value) {
  return EventFormula({{EventOp::kPrim, var.index, value}});
}

EventFormula EventFormula::negate(const EventFormula& f) {
  std::vector<EventInstr> code = f.code_;
  code.push_back({EventOp::kNot, 0, 0});
  return EventFormula(std::move(code));
}

EventFormula EventFormula::nary(EventOp op, std::span<const EventFormula> parts) {
  if (parts.empty()) throw QueryError("empty conjunction or disjunction");
  if (parts.size() == 1) return parts[0];
  std::vector<EventInstr> code;
  for (const auto& p : parts) code.insert(code.end(), p.code_.begin(), p.code_.end());
  code.push_back({op, 0, static_cast<std::int32_t>(parts.size())});
  return EventFormula(std::move(code));
}

EventFormula EventFormula::all_of(std::span<const EventFormula> parts) { return nary(EventOp::kAnd, parts); }
EventFormula EventFormula::any_of(std::span<const EventFormula> parts) { return nary(EventOp::kOr, parts); }

EventFormula EventFormula::both(const EventFormula& a, const EventFormula& b) {
  std::array<EventFormula, 2> parts{a, b};
  return all_of(parts);
}

EventFormula EventFormula::either(const EventFormula& a, const EventFormula& b) {
  std::array<EventFormula, 2> parts{a, b};
  return any_of(parts);
}

bool EventFormula::holds(std::span<const Value> state) const {
  std::array<bool, 64> small{};
  std::vector<bool> big;
  const bool use_small = code_.size() <= small.size();
  if (!use_small) big.resize(code_.size());
  auto at = [&](std::size_t i) -> bool { return use_small ? small[i] : big[i]; };
  auto put = [&](std::size_t i, bool b) {
    if (use_small)
      small[i] = b;
    else
      big[i] = b;
  };
  std::size_t sp = 0;
  for (const auto& in : code_) {
    switch (in.op) {
      case EventOp::kPrim:
        put(sp++, state[in.var] == in.arg);
        break;
      case EventOp::kNot:
        put(sp - 1, !at(sp - 1));
        break;
      case EventOp::kAnd: {
        std::size_t n = static_cast<std::size_t>(in.arg);
        bool r = true;
        for (std::size_t i = sp - n; i < sp; ++i) r = r && at(i);
        sp -= n;
        put(sp++, r);
        break;
      }
      case EventOp::kOr: {
        std::size_t n = static_cast<std::size_t>(in.arg);
        bool r = false;
        for (std::size_t i = sp - n; i < sp; ++i) r = r || at(i);
        sp -= n;
        put(sp++, r);
        break;
      }
    }
  }
  assert(sp == 1);
  return at(0);
}

EventFormula EventFormula::renamed(std::span<const VarId> from, std::span<const VarId> to) const {
  std::vector<EventInstr> code = code_;
  for (auto& in : code) {
    if (in.op != EventOp::kPrim) continue;
    for (std::size_t i = 0; i < from.size(); ++i)
      if (from[i].index == in.var) {
        in.var = to[i].index;
        break;
      }
  }
  return EventFormula(std::move(code));
}

void EventFormula::check(const Signature& sig) const {
  for (const auto& in : code_) {
    if (in.op != EventOp::kPrim) continue;
    if (in.var >= sig.size()) throw QueryError("formula names an unknown variable");
    VarId v{in.var};
    if (!sig.is_endogenous(v)) throw QueryError("formula mentions exogenous variable '" + sig.name(v) + "'");
    if (!sig.in_range(v, in.arg))
      throw QueryError("value " + std::to_string(in.arg) + " out of range for '" + sig.name(v) + "'");
  }
}

std::vector<VarId> EventFormula::variables() const {
  std::vector<VarId> out;
  for (const auto& in : code_)
    if (in.op == EventOp::kPrim) out.push_back(VarId{in.var});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string EventFormula::to_string(const Signature& sig) const {
  std::vector<std::string> st;
  for (const auto& in : code_) {
    switch (in.op) {
      case EventOp::kPrim:
        st.push_back(sig.name(VarId{in.var}) + "=" + std::to_string(in.arg));
        break;
      case EventOp::kNot:
        st.back() = "!" + st.back();
        break;
      case EventOp::kAnd:
      case EventOp::kOr: {
        std::size_t n = static_cast<std::size_t>(in.arg);
        std::string out = "(";
        for (std::size_t i = st.size() - n; i < st.size(); ++i) {
          if (i != st.size() - n) out += in.op == EventOp::kAnd ? " & " : " | ";
          out += st[i];
        }
        out += ")";
        st.resize(st.size() - n);
        st.push_back(std::move(out));
        break;
      }
    }
  }
  return st.back();
}

namespace {

// Shared by the event and causal formula parsers.
class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Signature& sig, EventParseOptions opts)
      : sc_(text), sig_(sig), opts_(opts) {}

  detail::Scanner& scanner() { return sc_; }

  EventFormula event() {
    if (sc_.consume("!")) return EventFormula::negate(event());
    if (sc_.consume("(")) {
      EventFormula first = event();
      if (sc_.consume(")")) return first;
      return event_chain(std::move(first));
    }
    return comparison();
  }

  // After "( first"; consumes through ')'.
  EventFormula event_chain(EventFormula first) {
    std::string_view op = sc_.peek_is("&") ? "&" : sc_.peek_is("|") ? "|" : "";
    if (op.empty()) sc_.fail("expected '&', '|' or ')'");
    std::vector<EventFormula> parts{std::move(first)};
    while (sc_.consume(op)) parts.push_back(event());
    if (sc_.peek_is("&") || sc_.peek_is("|")) sc_.fail("mixed '&' and '|' need explicit parentheses");
    sc_.expect(")");
    return op == "&" ? EventFormula::all_of(parts) : EventFormula::any_of(parts);
  }

  CausalFormula causal() {
    if (sc_.consume("!")) return CausalFormula::negate(causal());
    if (sc_.peek_is("[")) return intervened();
    if (sc_.consume("(")) {
      CausalFormula first = causal();
      if (sc_.consume(")")) return first;
      std::string_view op = sc_.peek_is("&") ? "&" : sc_.peek_is("|") ? "|" : "";
      if (op.empty()) sc_.fail("expected '&', '|' or ')'");
      std::vector<CausalFormula> parts{std::move(first)};
      while (sc_.consume(op)) parts.push_back(causal());
      if (sc_.peek_is("&") || sc_.peek_is("|")) sc_.fail("mixed '&' and '|' need explicit parentheses");
      sc_.expect(")");
      return op == "&" ? CausalFormula::all_of(std::move(parts)) : CausalFormula::any_of(std::move(parts));
    }
    return CausalFormula::event(comparison());
  }

  Assignment assignment(std::string_view arrow, std::string_view end, VarKind kind = VarKind::kEndogenous) {
    Assignment a;
    std::vector<std::size_t> offsets;
    do {
      if (!end.empty() && sc_.peek_is(end) && a.empty()) break;
      std::size_t at = sc_.pos();
      VarId v = sc_.expect_variable(sig_);
      sc_.expect(arrow);
      std::size_t vat = sc_.pos();
      Value x = sc_.expect_integer();
      if (sig_[v].kind != kind)
        sc_.fail_at(at, "'" + sig_.name(v) + "' is " + (sig_[v].endogenous() ? "endogenous" : "exogenous"));
      if (!sig_.in_range(v, x)) sc_.fail_at(vat, "value out of range for '" + sig_.name(v) + "'");
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].var == v) sc_.fail_at(at, "'" + sig_.name(v) + "' assigned twice");
      a.push_back({v, x});
    } while (sc_.consume(",") || (end.empty() && sc_.consume("&")));
    return a;
  }

 private:
  CausalFormula intervened() {
    sc_.expect("[");
    Assignment a = assignment("<-", "]");
    sc_.expect("]");
    return CausalFormula::intervened(normalized(std::move(a)), event());
  }

  // IDENT op rhs, or a bare proposition.
  EventFormula comparison() {
    std::size_t at = sc_.pos();
    auto name = sc_.identifier();
    if (!name) sc_.fail("expected a primitive event");
    auto id = sig_.find(*name);
    if (!id) sc_.fail_at(at, "unknown variable '" + std::string(*name) + "'");
    VarId x = *id;
    if (!sig_[x].endogenous()) sc_.fail_at(at, "'" + sig_.name(x) + "' is exogenous");

    std::string_view op;
    for (std::string_view cand : {"!=", ">=", "<=", "=", ">", "<"})
      if (sc_.peek_is(cand)) {
        op = cand;
        break;
      }
    if (op.empty()) {
      if (opts_.bare_propositions && sig_.in_range(x, 1)) return EventFormula::primitive(x, 1);
      sc_.fail("expected a comparison operator");
    }
    // "<-" belongs to intervention syntax, not a comparison.
    if (op == "<" && sc_.peek_is("<-")) sc_.fail("unexpected '<-'");
    sc_.consume(op);

    std::size_t rhs_at = sc_.pos();
    if ((op == "=" || op == "!=") && sc_.peek_identifier()) {
      VarId y = sc_.expect_variable(sig_);
      if (!sig_[y].endogenous()) sc_.fail_at(rhs_at, "'" + sig_.name(y) + "' is exogenous");
      return var_equality(x, y, op == "!=");
    }
    Value v = sc_.expect_integer();
    if (op == "=" || op == "!=") {
      if (!sig_.in_range(x, v)) sc_.fail_at(rhs_at, "value out of range for '" + sig_.name(x) + "'");
      EventFormula p = EventFormula::primitive(x, v);
      return op == "=" ? p : EventFormula::negate(p);
    }
    std::vector<EventFormula> parts;
    for (Value a : sig_.range(x)) {
      bool keep = op == ">=" ? a >= v : op == "<=" ? a <= v : op == ">" ? a > v : a < v;
      if (keep) parts.push_back(EventFormula::primitive(x, a));
    }
    if (parts.empty()) sc_.fail_at(rhs_at, "comparison is unsatisfiable over the range of '" + sig_.name(x) + "'");
    return EventFormula::any_of(parts);
  }

  // X = Y as a disjunction over value pairs; X != Y likewise with a != b.
  EventFormula var_equality(VarId x, VarId y, bool negated) {
    std::vector<EventFormula> parts;
    for (Value a : sig_.range(x))
      for (Value b : sig_.range(y))
        if ((a == b) != negated)
          parts.push_back(EventFormula::both(EventFormula::primitive(x, a), EventFormula::primitive(y, b)));
    if (parts.empty()) {
      // Ranges never (dis)agree: X=a & !(X=a) is the canonical falsum.
      EventFormula p = EventFormula::primitive(x, sig_.range(x)[0]);
      return EventFormula::both(p, EventFormula::negate(p));
    }
    return EventFormula::any_of(parts);
  }

  detail::Scanner sc_;
  const Signature& sig_;
  EventParseOptions opts_;
};

}  // namespace

EventFormula parse_event_formula(std::string_view text, const Signature& sig, EventParseOptions opts) {
  FormulaParser p(text, sig, opts);
  EventFormula f = p.event();
  p.scanner().expect_end();
  return f;
}

Assignment parse_assignment(std::string_view text, const Signature& sig, VarKind kind) {
  FormulaParser p(text, sig, {});
  Assignment a = p.assignment("=", "", kind);
  p.scanner().expect_end();
  return normalized(std::move(a));
}

CausalFormula parse_causal_formula(std::string_view text, const Signature& sig) {
  FormulaParser p(text, sig, {});
  CausalFormula f = p.causal();
  p.scanner().expect_end();
  return f;
}

CausalFormula CausalFormula::event(EventFormula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kEvent;
  n->effect = std::move(f);
  return CausalFormula(std::move(n));
}

CausalFormula CausalFormula::intervened(Assignment assignment, EventFormula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kIntervened;
  n->assignment = normalized(std::move(assignment));
  n->effect = std::move(f);
  return CausalFormula(std::move(n));
}

CausalFormula CausalFormula::negate(CausalFormula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNot;
  n->children.push_back(std::move(f));
  return CausalFormula(std::move(n));
}

CausalFormula CausalFormula::all_of(std::vector<CausalFormula> parts) {
  if (parts.empty()) throw QueryError("empty conjunction");
  if (parts.size() == 1) return std::move(parts[0]);
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAnd;
  n->children = std::move(parts);
  return CausalFormula(std::move(n));
}

CausalFormula CausalFormula::any_of(std::vector<CausalFormula> parts) {
  if (parts.empty()) throw QueryError("empty disjunction");
  if (parts.size() == 1) return std::move(parts[0]);
  auto n = std::make_shared<Node>();
  n->kind = Kind::kOr;
  n->children = std::move(parts);
  return CausalFormula(std::move(n));
}

std::string CausalFormula::to_string(const Signature& sig) const {
  switch (kind()) {
    case Kind::kEvent:
      return effect().to_string(sig);
    case Kind::kIntervened: {
      std::string out = "[";
      for (std::size_t i = 0; i < assignment().size(); ++i) {
        if (i) out += ", ";
        out += sig.name(assignment()[i].var) + "<-" + std::to_string(assignment()[i].value);
      }
      return out + "] " + effect().to_string(sig);
    }
    case Kind::kNot:
      return "!" + children()[0].to_string(sig);
    case Kind::kAnd:
    case Kind::kOr: {
      std::string out = "(";
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) out += kind() == Kind::kAnd ? " & " : " | ";
        out += children()[i].to_string(sig);
      }
      return out + ")";
    }
  }
  return {};
}

namespace {

bool eval_causal(const CausalModel& model, const Context& context, const CausalFormula& f, const TotalState& actual) {
  switch (f.kind()) {
    case CausalFormula::Kind::kEvent:
      f.effect().check(model.signature());
      return f.effect().holds(actual.values());
    case CausalFormula::Kind::kIntervened: {
      f.effect().check(model.signature());
      TotalState s = solve(intervene(model, f.assignment()), context);
      return f.effect().holds(s.values());
    }
    case CausalFormula::Kind::kNot:
      return !eval_causal(model, context, f.children()[0], actual);
    case CausalFormula::Kind::kAnd:
      for (const auto& c : f.children())
        if (!eval_causal(model, context, c, actual)) return false;
      return true;
    case CausalFormula::Kind::kOr:
      for (const auto& c : f.children())
        if (eval_causal(model, context, c, actual)) return true;
      return false;
  }
  return false;
}

}  // namespace

bool satisfies(const CausalModel& model, const Context& context, const CausalFormula& f) {
  return eval_causal(model, context, f, solve(model, context));
}

}  // namespace hpcause
