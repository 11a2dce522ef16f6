#pragma once

#include <climits>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hpcause/cause.hpp"

namespace hpcause::detail {

inline constexpr Value kFree = INT32_MIN;

// Answers "does phi hold in (M_{I}, u)?" for interventions I over the
// endogenous variables, memoized on I. One oracle per (model, context,
// effect); not thread-safe.
class EffectOracle {
 public:
  EffectOracle(const CausalModel& model, const Context& context, const EventFormula& effect,
               std::uint64_t budget);

  // `intervention` is indexed by VarId; kFree leaves a variable to its
  // equation.
  bool holds(std::span<const Value> intervention);

  // Solution of the unintervened model (z*).
  const std::vector<Value>& actual() const { return actual_; }
  bool effect_holds_actually() const { return actual_effect_; }

  // Whether an intervention on `v` can change phi at all in this context: v
  // is an ancestor of (or is) a variable of phi once the exogenous values are
  // folded into the equations. Intervening on other variables never changes
  // the answer of holds().
  bool relevant(VarId v) const { return relevant_[v.index]; }

  const CausalModel& model() const { return model_; }
  const EventFormula& effect() const { return effect_; }

  // Starts a new budget window; the memo is kept.
  void reset_budget() { used_ = 0; }

  SearchStats stats;

 private:
  void solve_into(std::span<const Value> intervention, std::vector<Value>& state) const;

  const CausalModel& model_;
  const EventFormula& effect_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  std::vector<Value> base_;  // context values, endogenous zeroed
  std::vector<Value> actual_;
  bool actual_effect_ = false;
  std::vector<bool> relevant_;
  std::vector<Value> scratch_;
  std::string key_;
  std::unordered_map<std::string, bool> memo_;
};

// Witness search and AC2 checks for one candidate X = x.
class WitnessSearch {
 public:
  WitnessSearch(EffectOracle& oracle, const Assignment& candidate, Variant variant);

  bool ac2a(const Assignment& contingency, const Assignment& alternative);
  // (b) or (b'); fills `diag` with the first falsifying subsets if given.
  bool ac2b(const Assignment& contingency, Ac2Diagnosis* diag = nullptr);

  // First witness in canonical order. With `changes`, only witnesses whose
  // contingency differs from the actual world in exactly that many variables.
  std::optional<Witness> find(std::optional<std::size_t> changes = std::nullopt);

  std::size_t changes(const Assignment& contingency) const;

 private:
  bool ac2b_cached(const Assignment& contingency);
  void reset_intervention();

  EffectOracle& oracle_;
  const Signature& sig_;
  Assignment candidate_;
  Variant variant_;
  std::vector<VarId> rest_;  // endogenous variables outside X, VarId order
  std::vector<VarId> relevant_rest_;
  std::vector<Value> intervention_;
  std::unordered_map<std::string, bool> b_cache_;
};

}  // namespace hpcause::detail
