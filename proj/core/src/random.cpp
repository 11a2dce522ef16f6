#include "hpcause/random.hpp"

#include <algorithm>

namespace hpcause::gen {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct Parent {
  VarId id;
  std::vector<Value> range;
};

Expression condition(Rng& rng, const std::vector<Parent>& parents, int depth) {
  if (depth <= 0 || coin(rng, 0.4)) {
    const Parent& p = parents[pick(rng, parents.size())];
    Expression eq = Expression::equals(Expression::variable(p.id), Expression::constant(p.range[pick(rng, p.range.size())]));
    return coin(rng, 0.2) ? Expression::negate(eq) : eq;
  }
  switch (pick(rng, 3)) {
    case 0:
      return Expression::negate(condition(rng, parents, depth - 1));
    case 1: {
      Expression parts[] = {condition(rng, parents, depth - 1), condition(rng, parents, depth - 1)};
      return Expression::all_of(parts);
    }
    default: {
      Expression parts[] = {condition(rng, parents, depth - 1), condition(rng, parents, depth - 1)};
      return Expression::any_of(parts);
    }
  }
}

// Value in `range` (a prefix {0..r-1}) computed from `parents`.
Expression value(Rng& rng, const std::vector<Value>& range, const std::vector<Parent>& parents, int depth) {
  const bool binary = range.size() == 2;
  if (depth <= 0 || coin(rng, 0.3)) {
    std::vector<const Parent*> fitting;
    for (const auto& p : parents)
      if (p.range.size() <= range.size()) fitting.push_back(&p);
    if (!fitting.empty() && coin(rng, 0.6)) return Expression::variable(fitting[pick(rng, fitting.size())]->id);
    return Expression::constant(range[pick(rng, range.size())]);
  }
  if (binary && coin(rng)) return condition(rng, parents, depth);
  return Expression::ite(condition(rng, parents, depth - 1), value(rng, range, parents, depth - 1),
                         value(rng, range, parents, depth - 1));
}

std::vector<Value> prefix_range(Value r) {
  std::vector<Value> out;
  for (Value v = 0; v < r; ++v) out.push_back(v);
  return out;
}

EventFormula event(Rng& rng, const std::vector<VarId>& vars, const Signature& sig, int depth) {
  if (depth <= 0 || coin(rng, 0.35)) {
    VarId v = vars[pick(rng, vars.size())];
    return EventFormula::primitive(v, sig.range(v)[pick(rng, sig.range(v).size())]);
  }
  switch (pick(rng, 3)) {
    case 0:
      return EventFormula::negate(event(rng, vars, sig, depth - 1));
    case 1:
      return EventFormula::both(event(rng, vars, sig, depth - 1), event(rng, vars, sig, depth - 1));
    default:
      return EventFormula::either(event(rng, vars, sig, depth - 1), event(rng, vars, sig, depth - 1));
  }
}

}  // namespace

CausalModel random_model(Rng& rng, const ModelShape& shape) {
  auto sig = std::make_shared<Signature>();
  std::vector<Parent> parents;
  auto random_range = [&] {
    Value r = std::uniform_int_distribution<Value>(2, std::max<Value>(2, shape.max_range))(rng);
    return prefix_range(r);
  };
  for (std::size_t i = 0; i < shape.exogenous; ++i) {
    auto range = random_range();
    VarId id = sig->add_exogenous("U" + std::to_string(i), range);
    parents.push_back({id, range});
  }
  const std::size_t n =
      std::uniform_int_distribution<std::size_t>(shape.min_endogenous, shape.max_endogenous)(rng);
  std::vector<std::optional<Expression>> eqs(shape.exogenous);
  for (std::size_t i = 0; i < n; ++i) {
    auto range = random_range();
    VarId id = sig->add_endogenous("V" + std::to_string(i), range);
    eqs.push_back(value(rng, range, parents, shape.max_depth));
    parents.push_back({id, range});
  }
  return CausalModel(std::move(sig), std::move(eqs));
}

Context random_context(Rng& rng, const Signature& sig) {
  Assignment a;
  for (VarId v : sig.exogenous()) a.push_back({v, sig.range(v)[pick(rng, sig.range(v).size())]});
  return Context(sig, std::move(a));
}

EventFormula random_event(Rng& rng, const Signature& sig, int max_depth) {
  std::vector<VarId> vars(sig.endogenous().begin(), sig.endogenous().end());
  return event(rng, vars, sig, max_depth);
}

Assignment random_candidate(Rng& rng, const CausalModel& model, const Context& context, std::size_t max_size,
                            double p_actual) {
  const Signature& sig = model.signature();
  TotalState actual = solve(model, context);
  std::vector<VarId> vars(sig.endogenous().begin(), sig.endogenous().end());
  std::shuffle(vars.begin(), vars.end(), rng);
  std::size_t size = std::uniform_int_distribution<std::size_t>(1, std::min(max_size, vars.size()))(rng);
  Assignment out;
  for (std::size_t i = 0; i < size; ++i) {
    VarId v = vars[i];
    Value x = coin(rng, p_actual) ? actual[v] : sig.range(v)[pick(rng, sig.range(v).size())];
    out.push_back({v, x});
  }
  return normalized(std::move(out));
}

Cqbf2 random_cqbf(Rng& rng, QuantifierShape shape, std::size_t n_exists, std::size_t n_forall, int max_depth) {
  std::vector<std::string> xs, ys;
  for (std::size_t i = 1; i <= n_exists; ++i) xs.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= n_forall; ++i) ys.push_back("y" + std::to_string(i));
  std::vector<std::string> outer = shape == QuantifierShape::kExistsForall ? xs : ys;
  std::vector<std::string> inner = shape == QuantifierShape::kExistsForall ? ys : xs;
  auto props = std::make_shared<Signature>();
  for (const auto& n : outer) props->add_endogenous(n, {0, 1});
  for (const auto& n : inner) props->add_endogenous(n, {0, 1});
  std::vector<VarId> vars(props->endogenous().begin(), props->endogenous().end());
  EventFormula m = event(rng, vars, *props, max_depth);
  return Cqbf2(shape, std::move(outer), std::move(inner), std::move(m), std::move(props));
}

void each_gate_model(std::size_t n, const std::function<bool(const CausalModel&)>& fn, bool with_xor) {
  auto sig = std::make_shared<Signature>();
  VarId u = sig->add_exogenous("U", {0, 1});
  std::vector<VarId> inputs{u};
  for (std::size_t i = 1; i <= n; ++i) inputs.push_back(sig->add_endogenous("V" + std::to_string(i), {0, 1}));

  // Choices for variable i (1-based) range over gates on inputs[0..i-1].
  auto choices = [&](std::size_t i) {
    std::vector<Expression> out{Expression::constant(0), Expression::constant(1)};
    for (std::size_t a = 0; a < i; ++a) {
      Expression p = Expression::variable(inputs[a]);
      out.push_back(p);
      out.push_back(Expression::negate(p));
    }
    for (std::size_t a = 0; a < i; ++a)
      for (std::size_t b = a + 1; b < i; ++b) {
        Expression pq[] = {Expression::variable(inputs[a]), Expression::variable(inputs[b])};
        out.push_back(Expression::all_of(pq));
        out.push_back(Expression::any_of(pq));
        if (with_xor) out.push_back(Expression::negate(Expression::equals(pq[0], pq[1])));
      }
    return out;
  };
  std::vector<std::vector<Expression>> options;
  for (std::size_t i = 1; i <= n; ++i) options.push_back(choices(i));

  std::vector<std::optional<Expression>> eqs(n + 1);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) return fn(CausalModel(sig, eqs));
    for (const auto& e : options[i]) {
      eqs[i + 1] = e;
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  rec(0);
}

}  // namespace hpcause::gen
