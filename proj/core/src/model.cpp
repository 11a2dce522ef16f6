#include "hpcause/model.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "hpcause/error.hpp"

namespace hpcause {

CausalModel::CausalModel(std::shared_ptr<const Signature> sig, std::vector<std::optional<Expression>> equations)
    : sig_(std::move(sig)), equations_(std::move(equations)), fixed_(sig_->size()) {
  if (equations_.size() != sig_->size()) throw ModelError("equation table does not match the signature");
  compute_order();
}

// Kahn's algorithm, smallest VarId first among ready variables.
void CausalModel::compute_order() {
  const Signature& sig = *sig_;
  std::vector<std::size_t> indegree(sig.size(), 0);
  std::vector<std::vector<VarId>> out(sig.size());
  for (VarId v : sig.endogenous()) {
    const auto& eq = equations_[v.index];
    if (!eq || fixed_[v.index]) continue;
    for (VarId r : eq->references()) {
      if (!sig.is_endogenous(r)) continue;
      out[r.index].push_back(v);
      ++indegree[v.index];
    }
  }
  std::priority_queue<VarId, std::vector<VarId>, std::greater<>> ready;
  for (VarId v : sig.endogenous())
    if (indegree[v.index] == 0) ready.push(v);
  order_.clear();
  while (!ready.empty()) {
    VarId v = ready.top();
    ready.pop();
    order_.push_back(v);
    for (VarId w : out[v.index])
      if (--indegree[w.index] == 0) ready.push(w);
  }
  acyclic_ = order_.size() == sig.endogenous().size();
  if (!acyclic_) order_.clear();
}

Context::Context(const Signature& sig, Assignment values) : values_(normalized(std::move(values))) {
  for (const auto& s : values_) {
    if (s.var.index >= sig.size()) throw QueryError("context names an unknown variable");
    if (sig.is_endogenous(s.var)) throw QueryError("context sets endogenous variable '" + sig.name(s.var) + "'");
    if (!sig.in_range(s.var, s.value))
      throw QueryError("context value " + std::to_string(s.value) + " out of range for '" + sig.name(s.var) + "'");
  }
  if (values_.size() != sig.exogenous().size()) {
    for (VarId u : sig.exogenous()) {
      bool found = std::any_of(values_.begin(), values_.end(), [&](const Setting& s) { return s.var == u; });
      if (!found) throw QueryError("context does not set exogenous variable '" + sig.name(u) + "'");
    }
  }
}

bool ValidationReport::valid() const {
  return std::all_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.kind == ViolationKind::kRangeCheckSkipped; });
}

namespace {

// Finds one directed cycle among `vars` (those not in the topological order).
std::vector<VarId> find_cycle(const CausalModel& model) {
  const Signature& sig = model.signature();
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> state(sig.size(), 0);
  std::vector<VarId> stack;
  std::vector<VarId> cycle;
  std::function<bool(VarId)> dfs = [&](VarId v) {
    state[v.index] = 1;
    stack.push_back(v);
    const auto& eq = model.equation(v);
    if (eq && !model.fixed_value(v)) {
      for (VarId r : eq->references()) {
        if (!sig.is_endogenous(r) || r == v) continue;
        if (state[r.index] == 1) {
          auto it = std::find(stack.begin(), stack.end(), r);
          cycle.assign(it, stack.end());
          return true;
        }
        if (state[r.index] == 0 && dfs(r)) return true;
      }
    }
    stack.pop_back();
    state[v.index] = 2;
    return false;
  };
  for (VarId v : sig.endogenous())
    if (state[v.index] == 0 && dfs(v)) break;
  // Edges run from referenced to referencing variable; report in edge order.
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

std::string names(const Signature& sig, const std::vector<VarId>& vars, std::string_view sep) {
  std::string out;
  for (VarId v : vars) {
    if (!out.empty()) out += sep;
    out += sig.name(v);
  }
  return out;
}

void check_range(const CausalModel& model, VarId target, ValidationReport& report) {
  const Signature& sig = model.signature();
  const Expression& eq = *model.equation(target);
  std::vector<VarId> refs;
  for (VarId r : eq.references())
    if (r != target) refs.push_back(r);

  std::uint64_t total = 1;
  for (VarId r : refs) {
    total *= sig.range(r).size();
    if (total > kRangeSweepLimit) {
      report.violations.push_back({ViolationKind::kRangeCheckSkipped, {target}, {}, 0,
                                   "range of '" + sig.name(target) + "' not checked: too many assignments"});
      return;
    }
  }

  std::vector<Value> state(sig.size(), 0);
  std::vector<std::size_t> digit(refs.size(), 0);
  for (VarId r : refs) state[r.index] = sig.range(r)[0];
  while (true) {
    Value v = eq.evaluate(state);
    if (!sig.in_range(target, v)) {
      Assignment witness;
      for (VarId r : refs) witness.push_back({r, state[r.index]});
      report.violations.push_back({ViolationKind::kRangeViolation, {target}, witness, v,
                                   "equation for '" + sig.name(target) + "' yields " + std::to_string(v) +
                                       " at " + to_string(sig, witness)});
      return;
    }
    std::size_t i = 0;
    for (; i < refs.size(); ++i) {
      const auto& range = sig.range(refs[i]);
      if (++digit[i] < range.size()) {
        state[refs[i].index] = range[digit[i]];
        break;
      }
      digit[i] = 0;
      state[refs[i].index] = range[0];
    }
    if (i == refs.size()) return;
  }
}

}  // namespace

ValidationReport validate_model(const CausalModel& model) {
  const Signature& sig = model.signature();
  ValidationReport report;
  report.binary = sig.is_binary();

  for (VarId u : sig.exogenous())
    if (model.equation(u))
      report.violations.push_back({ViolationKind::kEquationOnExogenous, {u}, {}, 0,
                                   "exogenous variable '" + sig.name(u) + "' has an equation"});

  for (VarId v : sig.endogenous()) {
    if (model.fixed_value(v)) continue;
    const auto& eq = model.equation(v);
    if (!eq) {
      report.violations.push_back(
          {ViolationKind::kMissingEquation, {v}, {}, 0, "no equation for '" + sig.name(v) + "'"});
      continue;
    }
    if (eq->references(v))
      report.violations.push_back({ViolationKind::kSelfReference, {v}, {}, 0,
                                   "equation for '" + sig.name(v) + "' references itself"});
  }

  if (!model.acyclic()) {
    auto cycle = find_cycle(model);
    if (!cycle.empty())
      report.violations.push_back({ViolationKind::kCycle, cycle, {}, 0,
                                   "cyclic dependency " + names(sig, cycle, " -> ") + " -> " +
                                       sig.name(cycle.front()) +
                                       " (only globally recursive models are supported)"});
  }

  for (VarId v : sig.endogenous())
    if (!model.fixed_value(v) && model.equation(v)) check_range(model, v, report);

  return report;
}

TotalState solve(const CausalModel& model, const Context& context) {
  const Signature& sig = model.signature();
  for (VarId v : sig.endogenous()) {
    if (model.fixed_value(v)) continue;
    if (!model.equation(v)) throw ModelError("no equation for '" + sig.name(v) + "'");
    if (model.equation(v)->references(v)) throw ModelError("equation for '" + sig.name(v) + "' references itself");
  }
  if (!model.acyclic()) throw ModelError("model is not recursive (cyclic dependency graph)");

  std::vector<Value> state(sig.size(), 0);
  for (const auto& s : context.values()) state[s.var.index] = s.value;
  for (VarId v : model.evaluation_order()) {
    if (const auto& f = model.fixed_value(v)) {
      state[v.index] = *f;
      continue;
    }
    Value x = model.equation(v)->evaluate(state);
    if (!sig.in_range(v, x))
      throw ModelError("equation for '" + sig.name(v) + "' yields out-of-range value " + std::to_string(x));
    state[v.index] = x;
  }
  return TotalState(std::move(state));
}

CausalModel intervene(const CausalModel& model, const Assignment& assignment) {
  const Signature& sig = model.signature();
  CausalModel out = model;
  bool changed = false;
  for (const auto& s : assignment) {
    if (s.var.index >= sig.size()) throw QueryError("intervention on an unknown variable");
    if (!sig.is_endogenous(s.var)) throw QueryError("cannot intervene on exogenous variable '" + sig.name(s.var) + "'");
    if (!sig.in_range(s.var, s.value))
      throw QueryError("value " + std::to_string(s.value) + " out of range for '" + sig.name(s.var) + "'");
    out.fixed_[s.var.index] = s.value;
    if (out.equations_[s.var.index]) {
      out.equations_[s.var.index].reset();
      changed = true;
    }
  }
  if (changed || !out.acyclic_) out.compute_order();
  return out;
}

DependencyGraph dependency_graph(const CausalModel& model) {
  if (!model.acyclic()) throw ModelError("model is not recursive (cyclic dependency graph)");
  const Signature& sig = model.signature();
  DependencyGraph g;
  for (VarId v : sig.endogenous()) {
    const auto& eq = model.equation(v);
    if (!eq) continue;
    for (VarId r : eq->references())
      if (sig.is_endogenous(r) && r != v) g.edges.emplace_back(r, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.order = model.evaluation_order();
  return g;
}

}  // namespace hpcause
