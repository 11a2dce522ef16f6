#include "hpcause/cause.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "hpcause/error.hpp"
#include "search.hpp"

namespace hpcause {

const char* to_string(Variant v) { return v == Variant::kUpdated ? "updated" : "original"; }

namespace {

void check_candidate(const Signature& sig, const Assignment& candidate) {
  if (candidate.empty()) throw QueryError("candidate cause is empty");
  for (const auto& s : candidate) {
    if (s.var.index >= sig.size()) throw QueryError("candidate names an unknown variable");
    if (!sig.is_endogenous(s.var)) throw QueryError("candidate variable '" + sig.name(s.var) + "' is exogenous");
    if (!sig.in_range(s.var, s.value))
      throw QueryError("candidate value " + std::to_string(s.value) + " out of range for '" + sig.name(s.var) + "'");
  }
}

void check_valid(const CausalModel& model) {
  ValidationReport report = validate_model(model);
  if (!report.valid()) {
    for (const auto& v : report.violations)
      if (v.kind != ViolationKind::kRangeCheckSkipped) throw ModelError("invalid model: " + v.message);
  }
}

bool in_candidate(const Assignment& candidate, VarId v) {
  return std::any_of(candidate.begin(), candidate.end(), [&](const Setting& s) { return s.var == v; });
}

void check_witness(const CauseQuery& q, const Witness& w) {
  const Signature& sig = q.model().signature();
  for (std::size_t i = 0; i < w.contingency.size(); ++i) {
    const auto& s = w.contingency[i];
    if (s.var.index >= sig.size() || !sig.is_endogenous(s.var))
      throw QueryError("witness contingency names a non-endogenous variable");
    if (in_candidate(q.candidate(), s.var))
      throw QueryError("witness contingency overlaps the candidate at '" + sig.name(s.var) + "'");
    if (!sig.in_range(s.var, s.value)) throw QueryError("witness value out of range for '" + sig.name(s.var) + "'");
    if (i > 0 && !(w.contingency[i - 1].var < s.var)) throw QueryError("witness contingency is not normalized");
  }
  if (w.alternative.size() != q.candidate().size()) throw QueryError("witness alternative does not cover the candidate");
  for (std::size_t i = 0; i < w.alternative.size(); ++i) {
    if (w.alternative[i].var != q.candidate()[i].var)
      throw QueryError("witness alternative does not match the candidate variables");
    if (!sig.in_range(w.alternative[i].var, w.alternative[i].value))
      throw QueryError("witness alternative out of range for '" + sig.name(w.alternative[i].var) + "'");
  }
}

bool ac1(const detail::EffectOracle& oracle, const Assignment& candidate) {
  const auto& actual = oracle.actual();
  for (const auto& s : candidate)
    if (actual[s.var.index] != s.value) return false;
  return oracle.effect_holds_actually();
}

// Nonempty strict subsets of `candidate`, size ascending then lexicographic.
template <typename Fn>
std::optional<Assignment> first_subset(const Assignment& candidate, Fn&& accept) {
  const std::size_t n = candidate.size();
  for (std::size_t size = 1; size < n; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      Assignment sub;
      for (std::size_t i : pick) sub.push_back(candidate[i]);
      if (accept(sub)) return sub;
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

std::optional<Assignment> ac3_violator(detail::EffectOracle& oracle, const Assignment& candidate, Variant variant) {
  return first_subset(candidate, [&](const Assignment& sub) {
    if (!ac1(oracle, sub)) return false;
    detail::WitnessSearch search(oracle, sub, variant);
    return search.find().has_value();
  });
}

void add_stats(SearchStats* out, const detail::EffectOracle& oracle) {
  if (out) *out += oracle.stats;
}

}  // namespace

CauseQuery::CauseQuery(CausalModel model, Context context, Assignment candidate, EventFormula effect, Variant variant)
    : model_(std::move(model)),
      context_(std::move(context)),
      candidate_(normalized(std::move(candidate))),
      effect_(std::move(effect)),
      variant_(variant) {
  check_valid(model_);
  const Signature& sig = model_.signature();
  Context recheck(sig, context_.values());
  (void)recheck;
  check_candidate(sig, candidate_);
  effect_.check(sig);
}

CauseQuery CauseQuery::with_candidate(Assignment candidate) const {
  CauseQuery q = *this;
  q.candidate_ = normalized(std::move(candidate));
  check_candidate(q.model_.signature(), q.candidate_);
  return q;
}

CauseQuery CauseQuery::with_variant(Variant v) const {
  CauseQuery q = *this;
  q.variant_ = v;
  return q;
}

std::vector<VarId> Witness::w_set() const {
  std::vector<VarId> out;
  for (const auto& s : contingency) out.push_back(s.var);
  return out;
}

bool check_ac1(const CauseQuery& q) {
  detail::EffectOracle oracle(q.model(), q.context(), q.effect(), 0);
  return ac1(oracle, q.candidate());
}

Ac2Diagnosis diagnose_ac2(const CauseQuery& q, const Witness& w, const SearchOptions& opts, SearchStats* stats) {
  check_witness(q, w);
  detail::EffectOracle oracle(q.model(), q.context(), q.effect(), opts.budget);
  detail::WitnessSearch search(oracle, q.candidate(), q.variant());
  Ac2Diagnosis d;
  d.ac2a = search.ac2a(w.contingency, w.alternative);
  d.ac2b = search.ac2b(w.contingency, &d);
  add_stats(stats, oracle);
  return d;
}

bool check_ac2_with_witness(const CauseQuery& q, const Witness& w, const SearchOptions& opts, SearchStats* stats) {
  check_witness(q, w);
  detail::EffectOracle oracle(q.model(), q.context(), q.effect(), opts.budget);
  detail::WitnessSearch search(oracle, q.candidate(), q.variant());
  bool r = search.ac2a(w.contingency, w.alternative) && search.ac2b(w.contingency);
  add_stats(stats, oracle);
  return r;
}

std::optional<Witness> find_ac2_witness(const CauseQuery& q, const SearchOptions& opts, SearchStats* stats) {
  detail::EffectOracle oracle(q.model(), q.context(), q.effect(), opts.budget);
  detail::WitnessSearch search(oracle, q.candidate(), q.variant());
  auto w = search.find();
  add_stats(stats, oracle);
  return w;
}

std::optional<Assignment> check_ac3(const CauseQuery& q, const SearchOptions& opts, SearchStats* stats) {
  detail::EffectOracle oracle(q.model(), q.context(), q.effect(), opts.budget);
  auto v = ac3_violator(oracle, q.candidate(), q.variant());
  add_stats(stats, oracle);
  return v;
}

CauseVerdict is_cause(const CauseQuery& q, const SearchOptions& opts, SearchStats* stats) {
  detail::EffectOracle oracle(q.model(), q.context(), q.effect(), opts.budget);
  CauseVerdict v;
  v.ac1 = ac1(oracle, q.candidate());
  {
    detail::WitnessSearch search(oracle, q.candidate(), q.variant());
    v.ac2_witness = search.find();
  }
  if (q.candidate().size() > 1) v.ac3_violator = ac3_violator(oracle, q.candidate(), q.variant());
  v.is_cause = v.ac1 && v.ac2_witness && !v.ac3_violator;
  add_stats(stats, oracle);
  return v;
}

std::vector<FoundCause> enumerate_causes(const CausalModel& model, const Context& context, const EventFormula& effect,
                                         Variant variant, std::size_t max_conjuncts, const SearchOptions& opts,
                                         SearchStats* stats) {
  if (max_conjuncts == 0) throw QueryError("max_conjuncts must be at least 1");
  check_valid(model);
  Context recheck(model.signature(), context.values());
  (void)recheck;
  effect.check(model.signature());

  detail::EffectOracle probe(model, context, effect, opts.budget);
  if (!probe.effect_holds_actually()) return {};

  // Candidates in output order: size, then lexicographic; values are actual.
  const auto endo = model.signature().endogenous();
  Assignment all;
  for (VarId v : endo) all.push_back({v, probe.actual()[v.index]});
  std::vector<Assignment> candidates;
  const std::size_t max_size = std::min(max_conjuncts, all.size());
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      Assignment c;
      for (std::size_t i : pick) c.push_back(all[i]);
      candidates.push_back(std::move(c));
      std::size_t i = size;
      bool advanced = false;
      while (i > 0) {
        --i;
        if (pick[i] < all.size() - size + i) {
          ++pick[i];
          for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }

  std::vector<std::optional<FoundCause>> found(candidates.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  std::size_t first_error_index = candidates.size();
  std::mutex stats_mu;

  auto worker = [&] {
    detail::EffectOracle oracle(model, context, effect, opts.budget);
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= candidates.size()) break;
      try {
        oracle.reset_budget();
        const Assignment& c = candidates[i];
        detail::WitnessSearch search(oracle, c, variant);
        auto w = search.find();
        if (!w) continue;
        if (c.size() > 1 && ac3_violator(oracle, c, variant)) continue;
        found[i] = FoundCause{c, std::move(*w)};
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
      }
    }
    std::lock_guard lock(stats_mu);
    add_stats(stats, oracle);
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(candidates.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<FoundCause> out;
  for (auto& f : found)
    if (f) out.push_back(std::move(*f));
  return out;
}

}  // namespace hpcause
