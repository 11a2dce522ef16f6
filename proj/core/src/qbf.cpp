#include "hpcause/qbf.hpp"

#include <algorithm>
#include <set>

#include "hpcause/error.hpp"

namespace hpcause {

namespace {

void check_blocks(const std::vector<std::string>& outer, const std::vector<std::string>& inner) {
  if (outer.empty() || inner.empty()) throw QueryError("both quantifier blocks must be nonempty");
  std::set<std::string> seen;
  for (const auto* block : {&outer, &inner})
    for (const auto& n : *block)
      if (!seen.insert(n).second) throw QueryError("proposition '" + n + "' is quantified twice");
}

std::shared_ptr<Signature> proposition_signature(const std::vector<std::string>& outer,
                                                 const std::vector<std::string>& inner) {
  auto sig = std::make_shared<Signature>();
  for (const auto* block : {&outer, &inner})
    for (const auto& n : *block) sig->add_endogenous(n, {0, 1});
  return sig;
}

// Increments a little-endian bit vector; false after wrapping to all zeros.
bool next_bits(std::vector<Value>& state, std::size_t first, std::size_t count) {
  for (std::size_t i = first + count; i > first; --i) {
    if (state[i - 1] == 0) {
      state[i - 1] = 1;
      return true;
    }
    state[i - 1] = 0;
  }
  return false;
}

EventFormula inequality(VarId a, VarId b) {
  EventFormula one_zero = EventFormula::both(EventFormula::primitive(a, 1), EventFormula::primitive(b, 0));
  EventFormula zero_one = EventFormula::both(EventFormula::primitive(a, 0), EventFormula::primitive(b, 1));
  return EventFormula::either(one_zero, zero_one);
}

EventFormula all_one(std::span<const VarId> vars) {
  std::vector<EventFormula> parts;
  for (VarId v : vars) parts.push_back(EventFormula::primitive(v, 1));
  return EventFormula::all_of(parts);
}

// Builder for the generated models: one exogenous U, every endogenous
// variable defaults to `V := U`.
class InstanceBuilder {
 public:
  InstanceBuilder() { u_ = sig_->add_exogenous("U", {0, 1}); }

  VarId add(const std::string& name) {
    if (sig_->find(name)) throw QueryError("proposition name collides with generated variable '" + name + "'");
    return sig_->add_endogenous(name, {0, 1});
  }

  CausalModel finish(std::span<const std::pair<VarId, VarId>> copies) {
    std::vector<std::optional<Expression>> eqs(sig_->size());
    for (VarId v : sig_->endogenous()) eqs[v.index] = Expression::variable(u_);
    for (const auto& [dst, src] : copies) eqs[dst.index] = Expression::variable(src);
    return CausalModel(sig_, std::move(eqs));
  }

  Context context() const { return Context(*sig_, {{u_, 0}}); }
  const Signature& signature() const { return *sig_; }

 private:
  std::shared_ptr<Signature> sig_ = std::make_shared<Signature>();
  VarId u_;
};

std::vector<VarId> prop_ids(const Cqbf2& f, const std::vector<std::string>& names) {
  std::vector<VarId> out;
  for (const auto& n : names) out.push_back(f.props().at(n));
  return out;
}

}  // namespace

Cqbf2::Cqbf2(QuantifierShape shape, std::vector<std::string> outer, std::vector<std::string> inner,
             EventFormula matrix, std::shared_ptr<const Signature> props)
    : shape_(shape),
      outer_(std::move(outer)),
      inner_(std::move(inner)),
      matrix_(std::move(matrix)),
      props_(std::move(props)) {
  check_blocks(outer_, inner_);
  if (!props_ || props_->size() != outer_.size() + inner_.size())
    throw QueryError("proposition signature does not match the quantifier blocks");
  std::size_t i = 0;
  for (const auto* block : {&outer_, &inner_})
    for (const auto& n : *block) {
      VarId id{static_cast<std::uint32_t>(i++)};
      if (props_->name(id) != n || !props_->is_endogenous(id) || props_->range(id) != std::vector<Value>{0, 1})
        throw QueryError("proposition signature does not match the quantifier blocks");
    }
  matrix_.check(*props_);
}

Cqbf2 Cqbf2::parse(QuantifierShape shape, std::vector<std::string> outer, std::vector<std::string> inner,
                   std::string_view matrix) {
  check_blocks(outer, inner);
  auto sig = proposition_signature(outer, inner);
  EventFormula m = parse_event_formula(matrix, *sig, {.bare_propositions = true});
  return Cqbf2(shape, std::move(outer), std::move(inner), std::move(m), std::move(sig));
}

std::string Cqbf2::to_string() const {
  const bool ef = shape_ == QuantifierShape::kExistsForall;
  std::string out = ef ? "exists" : "forall";
  for (const auto& n : outer_) out += " " + n;
  out += ef ? " forall" : " exists";
  for (const auto& n : inner_) out += " " + n;
  return out + " : " + matrix_.to_string(*props_);
}

bool eval_cqbf(const Cqbf2& f, std::size_t limit) {
  const std::size_t no = f.outer().size();
  const std::size_t ni = f.inner().size();
  if (no + ni > limit)
    throw SizeLimitError("CQBF has " + std::to_string(no + ni) + " variables, limit is " + std::to_string(limit));
  // exists-forall: some outer row with the matrix true on every inner row.
  // forall-exists: every outer row with the matrix true on some inner row.
  const bool outer_exists = f.shape() == QuantifierShape::kExistsForall;
  std::vector<Value> state(no + ni, 0);
  do {
    std::fill(state.begin() + static_cast<std::ptrdiff_t>(no), state.end(), 0);
    bool inner = outer_exists;
    do {
      if (f.matrix().holds(state) != outer_exists) {
        inner = !outer_exists;
        break;
      }
    } while (next_bits(state, no, ni));
    if (inner == outer_exists) return outer_exists;
  } while (next_bits(state, 0, no));
  return !outer_exists;
}

const char* to_string(Language l) { return l == Language::kAc2Singleton ? "ac2-singleton" : "ac3"; }

LabeledInstance build_sigma2_instance(const Cqbf2& f, std::size_t limit) {
  if (f.shape() != QuantifierShape::kExistsForall) throw QueryError("the sigma2 construction needs exists-forall");
  const bool label = eval_cqbf(f, limit);
  const auto& xs = f.exists_vars();
  const auto& ys = f.forall_vars();

  InstanceBuilder b;
  std::vector<VarId> x0, x1, y;
  for (const auto& n : xs) x0.push_back(b.add("X0_" + n));
  for (const auto& n : xs) x1.push_back(b.add("X1_" + n));
  for (const auto& n : ys) y.push_back(b.add(n));
  VarId a = b.add("A");

  std::vector<EventFormula> differ;
  for (std::size_t i = 0; i < xs.size(); ++i) differ.push_back(inequality(x0[i], x1[i]));
  EventFormula psi1 = EventFormula::negate(EventFormula::all_of(differ));

  std::vector<VarId> a_and_y{a};
  a_and_y.insert(a_and_y.end(), y.begin(), y.end());
  EventFormula psi2 = EventFormula::negate(all_one(a_and_y));

  std::vector<VarId> from = prop_ids(f, xs);
  std::vector<VarId> to = x1;
  for (VarId id : prop_ids(f, ys)) from.push_back(id);
  to.insert(to.end(), y.begin(), y.end());
  EventFormula psi3 = EventFormula::either(EventFormula::primitive(a, 1), f.matrix().renamed(from, to));

  EventFormula psi = EventFormula::either(psi1, EventFormula::both(psi2, psi3));
  CausalModel model = b.finish({});
  Context ctx = b.context();
  return LabeledInstance{CauseQuery(std::move(model), std::move(ctx), {{a, 0}}, std::move(psi), Variant::kUpdated),
                         label, Language::kAc2Singleton};
}

LabeledInstance build_pi2_instance(const Cqbf2& f, std::size_t limit) {
  if (f.shape() != QuantifierShape::kForallExists) throw QueryError("the pi2 construction needs forall-exists");
  const bool label = eval_cqbf(f, limit);
  const auto& xs = f.exists_vars();
  const auto& ys = f.forall_vars();

  InstanceBuilder b;
  std::vector<VarId> x, y0, y1;
  for (const auto& n : xs) x.push_back(b.add(n));
  for (const auto& n : ys) y0.push_back(b.add("Y0_" + n));
  for (const auto& n : ys) y1.push_back(b.add("Y1_" + n));
  VarId a1 = b.add("A1");
  VarId a2 = b.add("A2");
  VarId s = b.add("S");

  std::vector<EventFormula> differ;
  for (std::size_t i = 0; i < ys.size(); ++i) differ.push_back(inequality(y0[i], y1[i]));
  EventFormula psi1 = EventFormula::negate(EventFormula::all_of(differ));

  std::vector<VarId> as_and_x{a1, a2};
  as_and_x.insert(as_and_x.end(), x.begin(), x.end());
  EventFormula psi2 = EventFormula::negate(all_one(as_and_x));

  std::vector<VarId> from = prop_ids(f, xs);
  std::vector<VarId> to = x;
  for (VarId id : prop_ids(f, ys)) from.push_back(id);
  to.insert(to.end(), y1.begin(), y1.end());
  EventFormula same_a = EventFormula::either(
      EventFormula::both(EventFormula::primitive(a1, 0), EventFormula::primitive(a2, 0)),
      EventFormula::both(EventFormula::primitive(a1, 1), EventFormula::primitive(a2, 1)));
  EventFormula psi3 = EventFormula::either(same_a, EventFormula::negate(f.matrix().renamed(from, to)));

  std::vector<EventFormula> top{psi1, EventFormula::both(psi2, psi3), EventFormula::primitive(s, 0)};
  EventFormula psi = EventFormula::any_of(top);
  const std::pair<VarId, VarId> copies[] = {{a1, s}, {a2, s}};
  CausalModel model = b.finish(copies);
  Context ctx = b.context();
  return LabeledInstance{
      CauseQuery(std::move(model), std::move(ctx), {{a1, 0}, {a2, 0}}, std::move(psi), Variant::kUpdated), label,
      Language::kAc3};
}

bool decide_membership(const CauseQuery& q, Language language, const SearchOptions& opts, SearchStats* stats) {
  CauseQuery uq = q.with_variant(Variant::kUpdated);
  if (!check_ac1(uq)) return false;
  if (language == Language::kAc2Singleton) {
    if (uq.candidate().size() != 1) throw QueryError("L_AC2 singleton membership needs a singleton candidate");
    return find_ac2_witness(uq, opts, stats).has_value();
  }
  return !check_ac3(uq, opts, stats).has_value();
}

}  // namespace hpcause
