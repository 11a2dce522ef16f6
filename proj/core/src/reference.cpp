#include "hpcause/reference.hpp"

#include <algorithm>
#include <functional>

namespace hpcause::reference {

namespace {

// Calls `fn` on each tuple of the product of `ranges`, lexicographically (last
// position fastest). Stops when `fn` returns true.
bool each_tuple(const std::vector<std::vector<Value>>& ranges, const std::function<bool(const std::vector<Value>&)>& fn) {
  std::vector<Value> tuple(ranges.size());
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == ranges.size()) return fn(tuple);
    for (Value v : ranges[i]) {
      tuple[i] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

// Every subset of `vars`, as sorted vectors, ordered by size then
// lexicographically.
std::vector<std::vector<VarId>> subsets(const std::vector<VarId>& vars) {
  std::vector<std::vector<VarId>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    std::vector<VarId> s;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (mask >> i & 1) s.push_back(vars[i]);
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

bool contains(const std::vector<VarId>& vs, VarId v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); }

std::vector<VarId> candidate_vars(const CauseQuery& q) {
  std::vector<VarId> out;
  for (const auto& s : q.candidate()) out.push_back(s.var);
  return out;
}

// Endogenous variables outside X.
std::vector<VarId> outside(const CauseQuery& q) {
  std::vector<VarId> xs = candidate_vars(q);
  std::vector<VarId> out;
  for (VarId v : q.model().signature().endogenous())
    if (!contains(xs, v)) out.push_back(v);
  return out;
}

Assignment concat(Assignment a, const Assignment& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Visits (W, w, x') in canonical order; stops when `fn` returns true.
bool each_setting(const CauseQuery& q, const std::function<bool(const Witness&)>& fn) {
  const Signature& sig = q.model().signature();
  std::vector<std::vector<Value>> x_ranges;
  for (const auto& s : q.candidate()) x_ranges.push_back(sig.range(s.var));
  for (const auto& w_vars : subsets(outside(q))) {
    std::vector<std::vector<Value>> w_ranges;
    for (VarId v : w_vars) w_ranges.push_back(sig.range(v));
    bool stop = each_tuple(w_ranges, [&](const std::vector<Value>& w_vals) {
      Witness w;
      for (std::size_t i = 0; i < w_vars.size(); ++i) w.contingency.push_back({w_vars[i], w_vals[i]});
      return each_tuple(x_ranges, [&](const std::vector<Value>& x_vals) {
        w.alternative.clear();
        bool same = true;
        for (std::size_t i = 0; i < x_vals.size(); ++i) {
          w.alternative.push_back({q.candidate()[i].var, x_vals[i]});
          same = same && x_vals[i] == q.candidate()[i].value;
        }
        if (same) return false;
        return fn(w);
      });
    });
    if (stop) return true;
  }
  return false;
}

}  // namespace

bool holds_after(const CausalModel& model, const Context& context, const Assignment& intervention,
                 const EventFormula& effect) {
  TotalState s = solve(intervene(model, intervention), context);
  return effect.holds(s.values());
}

bool ac1(const CauseQuery& q) {
  TotalState actual = solve(q.model(), q.context());
  for (const auto& s : q.candidate())
    if (actual[s.var] != s.value) return false;
  return q.effect().holds(actual.values());
}

bool ac2_holds(const CauseQuery& q, const Witness& w) {
  // (a) [X <- x', W <- w] !phi
  if (holds_after(q.model(), q.context(), concat(w.alternative, w.contingency), q.effect())) return false;

  // (b) [X <- x, W' <- w, Z' <- z*] phi for the allowed W' and every Z' in
  // Z \ X, where Z is everything outside W.
  TotalState actual = solve(q.model(), q.context());
  std::vector<VarId> w_vars = w.w_set();
  std::vector<VarId> z_minus_x;
  for (VarId v : outside(q))
    if (!contains(w_vars, v)) z_minus_x.push_back(v);

  std::vector<std::vector<VarId>> w_subsets;
  if (q.variant() == Variant::kUpdated)
    w_subsets = subsets(w_vars);
  else
    w_subsets = {w_vars};

  for (const auto& w_sub : w_subsets) {
    for (const auto& z_sub : subsets(z_minus_x)) {
      Assignment i = q.candidate();
      for (const auto& s : w.contingency)
        if (contains(w_sub, s.var)) i.push_back(s);
      for (VarId z : z_sub) i.push_back({z, actual[z]});
      if (!holds_after(q.model(), q.context(), i, q.effect())) return false;
    }
  }
  return true;
}

std::vector<Witness> all_witnesses(const CauseQuery& q) {
  std::vector<Witness> out;
  each_setting(q, [&](const Witness& w) {
    if (ac2_holds(q, w)) out.push_back(w);
    return false;
  });
  return out;
}

std::optional<Witness> first_witness(const CauseQuery& q) {
  std::optional<Witness> found;
  each_setting(q, [&](const Witness& w) {
    if (!ac2_holds(q, w)) return false;
    found = w;
    return true;
  });
  return found;
}

std::optional<Assignment> ac3_violator(const CauseQuery& q) {
  std::vector<VarId> xs = candidate_vars(q);
  for (const auto& sub : subsets(xs)) {
    if (sub.empty() || sub.size() == xs.size()) continue;
    Assignment c;
    for (const auto& s : q.candidate())
      if (contains(sub, s.var)) c.push_back(s);
    CauseQuery sq = q.with_candidate(c);
    if (ac1(sq) && first_witness(sq)) return c;
  }
  return std::nullopt;
}

CauseVerdict is_cause(const CauseQuery& q) {
  CauseVerdict v;
  v.ac1 = ac1(q);
  v.ac2_witness = first_witness(q);
  v.ac3_violator = ac3_violator(q);
  v.is_cause = v.ac1 && v.ac2_witness && !v.ac3_violator;
  return v;
}

ResponsibilityResult responsibility(const CauseQuery& q) {
  ResponsibilityResult r;
  r.verdict = reference::is_cause(q);
  if (!r.verdict.is_cause) return r;
  TotalState actual = solve(q.model(), q.context());
  for (const auto& w : all_witnesses(q)) {
    std::size_t k = 0;
    for (const auto& s : w.contingency) k += s.value != actual[s.var];
    if (!r.min_changes || k < *r.min_changes) {
      r.min_changes = k;
      r.witness = w;
    }
  }
  r.degree = Rational(1, static_cast<std::int64_t>(*r.min_changes) + 1);
  return r;
}

Rational blame(const EpistemicState& state, const Assignment& setting, const EventFormula& effect, Variant variant) {
  Rational total(0);
  for (std::size_t i = 0; i < state.situations().size(); ++i) {
    const Situation& s = state.situations()[i];
    CauseQuery q(intervene(s.model, setting), s.context, setting, effect, variant);
    total += responsibility(q).degree * state.probabilities()[i];
  }
  return total;
}

bool eval_cqbf(const Cqbf2& f) {
  const std::size_t n_outer = f.outer().size();
  const std::size_t n = n_outer + f.inner().size();
  const bool outer_exists = f.shape() == QuantifierShape::kExistsForall;
  std::vector<Value> state(n, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) return f.matrix().holds(state);
    const bool exists = (i < n_outer) == outer_exists;
    state[i] = 0;
    bool r0 = rec(i + 1);
    if (exists && r0) return true;
    if (!exists && !r0) return false;
    state[i] = 1;
    return rec(i + 1);
  };
  return rec(0);
}

}  // namespace hpcause::reference
