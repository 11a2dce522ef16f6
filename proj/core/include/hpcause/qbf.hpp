#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "hpcause/cause.hpp"
#include "hpcause/formula.hpp"

namespace hpcause {

enum class QuantifierShape { kExistsForall, kForallExists };

// A closed two-block QBF. `outer` is quantified first: exists-outer
// forall-inner for kExistsForall, forall-outer exists-inner otherwise.
class Cqbf2 {
 public:
  // The matrix must be built over `props` (binary endogenous variables named
  // after outer then inner, in order). Throws QueryError for empty or
  // overlapping blocks, or a matrix mentioning other variables.
  Cqbf2(QuantifierShape shape, std::vector<std::string> outer, std::vector<std::string> inner,
        EventFormula matrix, std::shared_ptr<const Signature> props);

  // Builds the proposition signature and parses `matrix` with bare
  // propositions allowed.
  static Cqbf2 parse(QuantifierShape shape, std::vector<std::string> outer, std::vector<std::string> inner,
                     std::string_view matrix);

  QuantifierShape shape() const { return shape_; }
  const std::vector<std::string>& outer() const { return outer_; }
  const std::vector<std::string>& inner() const { return inner_; }
  const std::vector<std::string>& exists_vars() const {
    return shape_ == QuantifierShape::kExistsForall ? outer_ : inner_;
  }
  const std::vector<std::string>& forall_vars() const {
    return shape_ == QuantifierShape::kExistsForall ? inner_ : outer_;
  }
  const EventFormula& matrix() const { return matrix_; }
  const Signature& props() const { return *props_; }

  // `exists x1 x2 forall y1 : <matrix>`
  std::string to_string() const;

 private:
  QuantifierShape shape_;
  std::vector<std::string> outer_;
  std::vector<std::string> inner_;
  EventFormula matrix_;
  std::shared_ptr<const Signature> props_;
};

inline constexpr std::size_t kDefaultQbfLimit = 20;

// Truth value by exhaustive expansion. Throws SizeLimitError above `limit`
// variables in total.
bool eval_cqbf(const Cqbf2& f, std::size_t limit = kDefaultQbfLimit);

// L_AC2 restricted to singleton binary queries, or L_AC3 (AC1 and AC3).
enum class Language { kAc2Singleton, kAc3 };

const char* to_string(Language l);

struct LabeledInstance {
  CauseQuery query;
  bool expected_in_language;
  Language language;
};

// exists X forall Y phi  ->  (M, U=0, psi, A, 0) whose AC1/AC2 membership
// matches the QBF's truth value. Throws QueryError on the wrong shape or a
// proposition name colliding with a generated one.
LabeledInstance build_sigma2_instance(const Cqbf2& f, std::size_t limit = kDefaultQbfLimit);

// forall Y exists X phi  ->  (M, U=0, psi, (A1, A2), (0, 0)) whose AC1/AC3
// membership matches the QBF's truth value.
LabeledInstance build_pi2_instance(const Cqbf2& f, std::size_t limit = kDefaultQbfLimit);

// Decides the instance's language with the cause engine (UPDATED variant).
bool decide_membership(const CauseQuery& q, Language language, const SearchOptions& opts = {},
                       SearchStats* stats = nullptr);

}  // namespace hpcause
