#pragma once

// Seeded random instances for property tests and `hpcause selftest`.

#include <cstddef>
#include <functional>
#include <random>

#include "hpcause/cause.hpp"
#include "hpcause/qbf.hpp"

namespace hpcause::gen {

using Rng = std::mt19937_64;

struct ModelShape {
  std::size_t min_endogenous = 1;
  std::size_t max_endogenous = 5;
  std::size_t exogenous = 1;
  Value max_range = 3;  // ranges are {0, ..., r-1} with 2 <= r <= max_range
  int max_depth = 2;    // nesting of generated equations
};

// Acyclic; every equation stays in range, so the result always validates.
// Variables are U0.. (exogenous) then V0.. (endogenous, topological).
CausalModel random_model(Rng& rng, const ModelShape& shape);

Context random_context(Rng& rng, const Signature& sig);

// Boolean combination of primitive events over endogenous variables.
EventFormula random_event(Rng& rng, const Signature& sig, int max_depth);

// Nonempty; values are actual with probability `p_actual` each, otherwise
// random in range.
Assignment random_candidate(Rng& rng, const CausalModel& model, const Context& context, std::size_t max_size,
                            double p_actual = 0.9);

// Quantifier blocks named x1.., y1.. ; the matrix uses every proposition at
// most `max_depth` levels deep.
Cqbf2 random_cqbf(Rng& rng, QuantifierShape shape, std::size_t n_exists, std::size_t n_forall, int max_depth);

// Every binary model with one exogenous U and endogenous V1..Vn in that
// order, where each Vi is a gate over U and V1..V(i-1); two-input gates take
// distinct inputs in increasing order. Stops early if `fn` returns false.
void each_gate_model(std::size_t n, const std::function<bool(const CausalModel&)>& fn, bool with_xor = true);

}  // namespace hpcause::gen
