#pragma once

// Slow, literal implementations of the causality definitions. They share no
// code with the witness search: every check intervenes on the model and
// solves it from scratch, and every quantifier is expanded as written. Used as
// an independent oracle by the tests and `hpcause selftest`.

#include <optional>
#include <vector>

#include "hpcause/cause.hpp"
#include "hpcause/qbf.hpp"
#include "hpcause/responsibility.hpp"

namespace hpcause::reference {

// (M_{I}, u) |= phi
bool holds_after(const CausalModel& model, const Context& context, const Assignment& intervention,
                 const EventFormula& effect);

bool ac1(const CauseQuery& q);

// AC2(a) and AC2(b) (or (b') for the original variant), quantifying over W'
// and Z' exactly as stated.
bool ac2_holds(const CauseQuery& q, const Witness& w);

// Every witness (W, w, x') satisfying AC2, in canonical order.
std::vector<Witness> all_witnesses(const CauseQuery& q);

std::optional<Witness> first_witness(const CauseQuery& q);

std::optional<Assignment> ac3_violator(const CauseQuery& q);

CauseVerdict is_cause(const CauseQuery& q);

// Minimum over all_witnesses of the number of W-values that differ from the
// actual world; 0 degree for non-causes.
ResponsibilityResult responsibility(const CauseQuery& q);

Rational blame(const EpistemicState& state, const Assignment& setting, const EventFormula& effect, Variant variant);

// Recursive quantifier expansion.
bool eval_cqbf(const Cqbf2& f);

}  // namespace hpcause::reference
