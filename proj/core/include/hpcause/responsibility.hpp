#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "hpcause/cause.hpp"

namespace hpcause {

using Rational = boost::rational<std::int64_t>;

// Always `num/den`, e.g. "1/6", "0/1", "1/1".
std::string to_string(const Rational& r);
// Accepts `num/den` or a bare integer. Throws ParseError.
Rational parse_rational(std::string_view text);

struct ResponsibilityResult {
  Rational degree{0};
  std::optional<std::size_t> min_changes;
  std::optional<Witness> witness;
  CauseVerdict verdict;
};

// 0 for non-causes, otherwise 1/(k+1) with k the fewest contingency variables
// whose witness value differs from their actual value, over all witnesses.
ResponsibilityResult degree_of_responsibility(const CauseQuery& q, const SearchOptions& opts = {},
                                              SearchStats* stats = nullptr);

struct Situation {
  CausalModel model;
  Context context;
};

// A finite set of situations with exact probabilities.
class EpistemicState {
 public:
  // Throws QueryError if empty, a probability is negative, the probabilities
  // do not sum to exactly 1, or situations have different signatures.
  EpistemicState(std::vector<Situation> situations, std::vector<Rational> probabilities);

  const std::vector<Situation>& situations() const { return situations_; }
  const std::vector<Rational>& probabilities() const { return probabilities_; }
  const Signature& signature() const { return situations_.front().model.signature(); }

 private:
  std::vector<Situation> situations_;
  std::vector<Rational> probabilities_;
};

// Expected responsibility of X = x for phi over the situations, each evaluated
// in M_{X <- x}. Situations run on `opts.threads` workers; the sum is taken in
// list order.
Rational degree_of_blame(const EpistemicState& state, const Assignment& setting, const EventFormula& effect,
                         Variant variant = Variant::kUpdated, const SearchOptions& opts = {},
                         SearchStats* stats = nullptr);

}  // namespace hpcause
