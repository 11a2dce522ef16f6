#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hpcause/formula.hpp"
#include "hpcause/model.hpp"

namespace hpcause {

// UPDATED quantifies AC2(b) over every W' subset of W; ORIGINAL only over W
// itself (AC2(b')).
enum class Variant { kUpdated, kOriginal };

const char* to_string(Variant v);

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct SearchOptions {
  std::uint64_t budget = kDefaultBudget;  // solver calls per operation
  unsigned threads = 1;                   // used by enumerate_causes only
};

struct SearchStats {
  std::uint64_t solver_calls = 0;
  std::uint64_t memo_hits = 0;

  SearchStats& operator+=(const SearchStats& o) {
    solver_calls += o.solver_calls;
    memo_hits += o.memo_hits;
    return *this;
  }
};

// <M, u, phi, X, x> plus the definition variant.
class CauseQuery {
 public:
  // Throws ModelError if `model` is invalid and QueryError if the context,
  // candidate or effect does not fit it (or the candidate is empty).
  CauseQuery(CausalModel model, Context context, Assignment candidate, EventFormula effect,
             Variant variant = Variant::kUpdated);

  const CausalModel& model() const { return model_; }
  const Context& context() const { return context_; }
  const Assignment& candidate() const { return candidate_; }
  const EventFormula& effect() const { return effect_; }
  Variant variant() const { return variant_; }

  // Same query with another candidate (must be nonempty).
  CauseQuery with_candidate(Assignment candidate) const;
  CauseQuery with_variant(Variant v) const;

 private:
  CausalModel model_;
  Context context_;
  Assignment candidate_;
  EventFormula effect_;
  Variant variant_ = Variant::kUpdated;
};

// (W, w, x'): the contingency W <- w and the alternative setting x' of the
// candidate. Both assignments are sorted by variable.
struct Witness {
  Assignment contingency;
  Assignment alternative;

  std::vector<VarId> w_set() const;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CauseVerdict {
  bool is_cause = false;
  bool ac1 = false;
  std::optional<Witness> ac2_witness;
  std::optional<Assignment> ac3_violator;
};

// Why a given witness fails AC2. `w_subset`/`z_subset` name the first
// falsifying [X <- x, W' <- w, Z' <- z*] found.
struct Ac2Diagnosis {
  bool ac2a = false;
  bool ac2b = false;
  Assignment w_subset;
  std::vector<VarId> z_subset;

  bool holds() const { return ac2a && ac2b; }
};

// AC1: X = x and phi both hold in (M, u).
bool check_ac1(const CauseQuery& q);

// Throws QueryError if the witness does not match the query (W overlapping X,
// x' not covering X, out-of-range values).
bool check_ac2_with_witness(const CauseQuery& q, const Witness& w, const SearchOptions& opts = {},
                            SearchStats* stats = nullptr);
Ac2Diagnosis diagnose_ac2(const CauseQuery& q, const Witness& w, const SearchOptions& opts = {},
                          SearchStats* stats = nullptr);

// First witness in canonical order: |W| ascending, then W lexicographic by
// variable order, then w, then x' lexicographic by range order.
// Throws BudgetExceeded.
std::optional<Witness> find_ac2_witness(const CauseQuery& q, const SearchOptions& opts = {},
                                        SearchStats* stats = nullptr);

// First nonempty strict subset of the candidate (size ascending, then
// lexicographic) satisfying AC1 and AC2, or nothing if the candidate is
// minimal.
std::optional<Assignment> check_ac3(const CauseQuery& q, const SearchOptions& opts = {},
                                    SearchStats* stats = nullptr);

CauseVerdict is_cause(const CauseQuery& q, const SearchOptions& opts = {}, SearchStats* stats = nullptr);

struct FoundCause {
  Assignment cause;
  Witness witness;
};

// Every X = x with 1 <= |X| <= max_conjuncts, x the actual values of X, that
// is a cause of `effect`; ordered by size then lexicographically. The budget
// applies to each candidate separately.
std::vector<FoundCause> enumerate_causes(const CausalModel& model, const Context& context,
                                         const EventFormula& effect, Variant variant,
                                         std::size_t max_conjuncts, const SearchOptions& opts = {},
                                         SearchStats* stats = nullptr);

}  // namespace hpcause
