#include "search.hpp"

#include <algorithm>
#include <cstring>

#include "hpcause/error.hpp"

namespace hpcause::detail {

namespace {

// Odometer step, last position fastest. False once every position wrapped.
template <typename Radix>
bool next_digits(std::vector<std::size_t>& digit, Radix radix) {
  for (std::size_t i = digit.size(); i > 0; --i) {
    if (++digit[i - 1] < radix(i - 1)) return true;
    digit[i - 1] = 0;
  }
  return false;
}

}  // namespace

EffectOracle::EffectOracle(const CausalModel& model, const Context& context, const EventFormula& effect,
                           std::uint64_t budget)
    : model_(model), effect_(effect), budget_(budget), base_(model.signature().size(), 0) {
  for (const auto& s : context.values()) base_[s.var.index] = s.value;
  std::vector<Value> none(base_.size(), kFree);
  solve_into(none, actual_);
  actual_effect_ = effect_.holds(actual_);

  const Signature& sig = model.signature();
  std::vector<std::optional<Value>> known(sig.size());
  for (const auto& s : context.values()) known[s.var.index] = s.value;
  relevant_.assign(sig.size(), false);
  std::vector<VarId> todo = effect.variables();
  for (VarId v : todo) relevant_[v.index] = true;
  while (!todo.empty()) {
    VarId v = todo.back();
    todo.pop_back();
    if (model.fixed_value(v) || !model.equation(v)) continue;
    for (VarId p : model.equation(v)->live_references(known))
      if (!relevant_[p.index] && sig.is_endogenous(p)) {
        relevant_[p.index] = true;
        todo.push_back(p);
      }
  }
}

void EffectOracle::solve_into(std::span<const Value> intervention, std::vector<Value>& state) const {
  state = base_;
  for (VarId v : model_.evaluation_order()) {
    Value forced = intervention[v.index];
    if (forced != kFree) {
      state[v.index] = forced;
    } else if (const auto& f = model_.fixed_value(v)) {
      state[v.index] = *f;
    } else {
      state[v.index] = model_.equation(v)->evaluate(state);
    }
  }
}

bool EffectOracle::holds(std::span<const Value> intervention) {
  key_.resize(intervention.size_bytes());
  std::memcpy(key_.data(), intervention.data(), intervention.size_bytes());
  if (auto it = memo_.find(key_); it != memo_.end()) {
    ++stats.memo_hits;
    return it->second;
  }
  if (used_ >= budget_) throw BudgetExceeded(budget_);
  ++used_;
  ++stats.solver_calls;
  solve_into(intervention, scratch_);
  bool r = effect_.holds(scratch_);
  memo_.emplace(key_, r);
  return r;
}

WitnessSearch::WitnessSearch(EffectOracle& oracle, const Assignment& candidate, Variant variant)
    : oracle_(oracle),
      sig_(oracle.model().signature()),
      candidate_(candidate),
      variant_(variant),
      intervention_(sig_.size(), kFree) {
  for (VarId v : sig_.endogenous()) {
    bool in_x = std::any_of(candidate_.begin(), candidate_.end(), [&](const Setting& s) { return s.var == v; });
    if (!in_x) rest_.push_back(v);
  }
  std::sort(rest_.begin(), rest_.end());
  for (VarId v : rest_)
    if (oracle_.relevant(v)) relevant_rest_.push_back(v);
  if (rest_.size() >= 63) throw SizeLimitError("too many endogenous variables for witness search");
}

void WitnessSearch::reset_intervention() { std::fill(intervention_.begin(), intervention_.end(), kFree); }

std::size_t WitnessSearch::changes(const Assignment& contingency) const {
  const auto& actual = oracle_.actual();
  return static_cast<std::size_t>(std::count_if(contingency.begin(), contingency.end(),
                                                [&](const Setting& s) { return s.value != actual[s.var.index]; }));
}

bool WitnessSearch::ac2a(const Assignment& contingency, const Assignment& alternative) {
  reset_intervention();
  for (const auto& s : alternative) intervention_[s.var.index] = s.value;
  for (const auto& s : contingency) intervention_[s.var.index] = s.value;
  return !oracle_.holds(intervention_);
}

// Variables of W whose w-value equals their actual value behave exactly like
// members of Z' set to z*, so both quantifiers collapse to: every subset C' of
// the changed variables C (UPDATED; only C itself for ORIGINAL) combined with
// every subset S of the remaining variables pinned to z* (for ORIGINAL, S must
// contain the unchanged members of W).
bool WitnessSearch::ac2b(const Assignment& contingency, Ac2Diagnosis* diag) {
  const auto& actual = oracle_.actual();
  std::vector<Setting> changed;
  std::vector<VarId> pinned_free;  // may or may not be pinned to z*
  std::vector<VarId> pinned_always;
  for (const auto& s : contingency) {
    if (s.value != actual[s.var.index])
      changed.push_back(s);
    else if (variant_ == Variant::kUpdated && oracle_.relevant(s.var))
      pinned_free.push_back(s.var);
    else if (variant_ == Variant::kUpdated)
      continue;
    else
      pinned_always.push_back(s.var);
  }
  // Pinning an irrelevant variable never changes phi, so leaving those out
  // keeps both the verdict and the first falsifying subsets.
  for (VarId v : relevant_rest_) {
    bool in_w = std::any_of(contingency.begin(), contingency.end(), [&](const Setting& s) { return s.var == v; });
    if (!in_w) pinned_free.push_back(v);
  }
  std::sort(pinned_free.begin(), pinned_free.end());

  const std::uint64_t changed_masks = std::uint64_t{1} << changed.size();
  const std::uint64_t pin_masks = std::uint64_t{1} << pinned_free.size();
  const std::uint64_t first_changed_mask = variant_ == Variant::kUpdated ? 0 : changed_masks - 1;

  for (std::uint64_t cm = first_changed_mask; cm < changed_masks; ++cm) {
    for (std::uint64_t pm = 0; pm < pin_masks; ++pm) {
      reset_intervention();
      for (const auto& s : candidate_) intervention_[s.var.index] = s.value;
      for (VarId v : pinned_always) intervention_[v.index] = actual[v.index];
      for (std::size_t i = 0; i < changed.size(); ++i)
        if (cm >> i & 1) intervention_[changed[i].var.index] = changed[i].value;
      for (std::size_t i = 0; i < pinned_free.size(); ++i)
        if (pm >> i & 1) intervention_[pinned_free[i].index] = actual[pinned_free[i].index];
      if (oracle_.holds(intervention_)) continue;

      if (diag) {
        diag->w_subset.clear();
        diag->z_subset.clear();
        for (std::size_t i = 0; i < changed.size(); ++i)
          if (cm >> i & 1) diag->w_subset.push_back(changed[i]);
        for (VarId v : pinned_always) diag->w_subset.push_back({v, actual[v.index]});
        for (std::size_t i = 0; i < pinned_free.size(); ++i) {
          if (!(pm >> i & 1)) continue;
          VarId v = pinned_free[i];
          bool in_w =
              std::any_of(contingency.begin(), contingency.end(), [&](const Setting& s) { return s.var == v; });
          if (in_w)
            diag->w_subset.push_back({v, actual[v.index]});
          else
            diag->z_subset.push_back(v);
        }
        diag->w_subset = normalized(std::move(diag->w_subset));
      }
      return false;
    }
  }
  return true;
}

bool WitnessSearch::ac2b_cached(const Assignment& contingency) {
  if (variant_ == Variant::kOriginal) return ac2b(contingency);
  // UPDATED (b) depends only on the changed part of the contingency.
  const auto& actual = oracle_.actual();
  std::string key;
  for (const auto& s : contingency) {
    if (s.value == actual[s.var.index]) continue;
    key.append(reinterpret_cast<const char*>(&s.var.index), sizeof s.var.index);
    key.append(reinterpret_cast<const char*>(&s.value), sizeof s.value);
  }
  if (auto it = b_cache_.find(key); it != b_cache_.end()) return it->second;
  bool r = ac2b(contingency);
  b_cache_.emplace(std::move(key), r);
  return r;
}

std::optional<Witness> WitnessSearch::find(std::optional<std::size_t> changes) {
  const auto& actual = oracle_.actual();

  // Alternatives x' != x in lexicographic range order.
  std::vector<Assignment> alternatives;
  {
    std::vector<std::size_t> digit(candidate_.size(), 0);
    do {
      Assignment alt;
      for (std::size_t i = 0; i < candidate_.size(); ++i)
        alt.push_back({candidate_[i].var, sig_.range(candidate_[i].var)[digit[i]]});
      if (alt != candidate_) alternatives.push_back(std::move(alt));
    } while (next_digits(digit, [&](std::size_t i) { return sig_.range(candidate_[i].var).size(); }));
  }
  if (alternatives.empty()) return std::nullopt;

  // Without a relevant candidate variable, (a) and (b) with W' = W and Z'
  // empty ask for phi to both fail and hold. A contingency on irrelevant
  // variables can be dropped without breaking AC2, so the first witness and
  // the fewest changes both use relevant variables only.
  if (std::none_of(candidate_.begin(), candidate_.end(), [&](const Setting& s) { return oracle_.relevant(s.var); }))
    return std::nullopt;
  const std::vector<VarId>& rest = relevant_rest_;
  const std::size_t n = rest.size();

  for (std::size_t size = changes.value_or(0); size <= n; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      // Contingency values in lexicographic range order.
      std::vector<std::size_t> digit(size, 0);
      do {
        Assignment w;
        std::size_t changed = 0;
        for (std::size_t i = 0; i < size; ++i) {
          VarId v = rest[pick[i]];
          Value x = sig_.range(v)[digit[i]];
          changed += x != actual[v.index];
          w.push_back({v, x});
        }
        if (!changes || changed == *changes) {
          for (const auto& alt : alternatives) {
            if (!ac2a(w, alt)) continue;
            if (ac2b_cached(w)) return Witness{std::move(w), alt};
            break;  // (b) does not depend on x'
          }
        }
      } while (next_digits(digit, [&](std::size_t i) { return sig_.range(rest[pick[i]]).size(); }));
      // Next combination of `size` indices out of n.
      std::size_t i = size;
      bool advanced = false;
      while (i > 0) {
        --i;
        if (pick[i] < n - size + i) {
          ++pick[i];
          for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return std::nullopt;
}

}  // namespace hpcause::detail
