#include "hpcause/responsibility.hpp"

#include <atomic>
#include <charconv>
#include <mutex>
#include <thread>

#include "hpcause/error.hpp"
#include "search.hpp"

namespace hpcause {

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view t = trim(text);
  std::size_t lead = static_cast<std::size_t>(t.data() - text.data());
  auto parse_int = [&](std::string_view s, std::size_t at) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("expected an integer", at);
    return v;
  };
  auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(t, lead));
  std::string_view num = trim(t.substr(0, slash));
  std::string_view den = trim(t.substr(slash + 1));
  std::int64_t n = parse_int(num, lead);
  std::int64_t d = parse_int(den, static_cast<std::size_t>(den.data() - text.data()));
  if (d == 0) throw ParseError("zero denominator", static_cast<std::size_t>(den.data() - text.data()));
  return Rational(n, d);
}

ResponsibilityResult degree_of_responsibility(const CauseQuery& q, const SearchOptions& opts, SearchStats* stats) {
  ResponsibilityResult result;
  result.verdict = is_cause(q, opts, stats);
  if (!result.verdict.is_cause) return result;

  detail::EffectOracle oracle(q.model(), q.context(), q.effect(), opts.budget);
  detail::WitnessSearch search(oracle, q.candidate(), q.variant());
  const std::size_t max_k = q.model().signature().endogenous().size() - q.candidate().size();
  // Iterative deepening on the number of changed contingency variables: the
  // first k with a witness is the minimum.
  for (std::size_t k = 0; k <= max_k; ++k) {
    if (auto w = search.find(k)) {
      result.min_changes = k;
      result.witness = std::move(w);
      result.degree = Rational(1, static_cast<std::int64_t>(k) + 1);
      break;
    }
  }
  if (stats) *stats += oracle.stats;
  if (!result.witness) throw Error("internal: cause without a witness");
  return result;
}

EpistemicState::EpistemicState(std::vector<Situation> situations, std::vector<Rational> probabilities)
    : situations_(std::move(situations)), probabilities_(std::move(probabilities)) {
  if (situations_.empty()) throw QueryError("epistemic state has no situations");
  if (situations_.size() != probabilities_.size()) throw QueryError("one probability per situation is required");
  Rational total(0);
  for (const auto& p : probabilities_) {
    if (p < Rational(0)) throw QueryError("negative probability " + to_string(p));
    total += p;
  }
  if (total != Rational(1)) throw QueryError("probabilities sum to " + to_string(total) + ", not 1");
  for (const auto& s : situations_) {
    if (!(s.model.signature() == signature()))
      throw QueryError("all situations must share one signature (same variables, ranges and order)");
    Context recheck(s.model.signature(), s.context.values());
    (void)recheck;
  }
}

Rational degree_of_blame(const EpistemicState& state, const Assignment& setting, const EventFormula& effect,
                         Variant variant, const SearchOptions& opts, SearchStats* stats) {
  const auto& situations = state.situations();
  std::vector<Rational> dr(situations.size(), Rational(0));
  std::vector<SearchStats> per(situations.size());
  std::vector<std::exception_ptr> errors(situations.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= situations.size()) break;
      try {
        const auto& s = situations[i];
        CauseQuery q(intervene(s.model, setting), s.context, setting, effect, variant);
        dr[i] = degree_of_responsibility(q, opts, &per[i]).degree;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(situations.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  Rational blame(0);
  for (std::size_t i = 0; i < situations.size(); ++i) {
    blame += dr[i] * state.probabilities()[i];
    if (stats) *stats += per[i];
  }
  return blame;
}

}  // namespace hpcause
