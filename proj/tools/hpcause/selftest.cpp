#include "selftest.hpp"

#include "hpcause/qbf.hpp"
#include "hpcause/random.hpp"
#include "hpcause/reference.hpp"
#include "hpcause/responsibility.hpp"

namespace hpcause::cli {

namespace {

bool same_verdict(const CauseVerdict& a, const CauseVerdict& b) {
  return a.is_cause == b.is_cause && a.ac1 == b.ac1 && a.ac2_witness == b.ac2_witness &&
         a.ac3_violator == b.ac3_violator;
}

SuiteResult engine_suite(const SelftestOptions& opts, std::vector<std::string>& mismatches) {
  SuiteResult r{"cause engine vs brute force", 0, 0};
  gen::Rng rng(opts.seed);
  gen::ModelShape shape;
  shape.max_endogenous = 4;
  for (int i = 0; i < 10 * opts.scale; ++i) {
    CausalModel m = gen::random_model(rng, shape);
    Context ctx = gen::random_context(rng, m.signature());
    EventFormula phi = gen::random_event(rng, m.signature(), 2);
    Assignment x = gen::random_candidate(rng, m, ctx, 2);
    for (Variant v : {Variant::kUpdated, Variant::kOriginal}) {
      CauseQuery q(m, ctx, x, phi, v);
      ++r.checked;
      ResponsibilityResult fast = degree_of_responsibility(q);
      ResponsibilityResult slow = reference::responsibility(q);
      if (same_verdict(fast.verdict, slow.verdict) && fast.degree == slow.degree && fast.witness == slow.witness)
        ++r.agreed;
      else
        mismatches.push_back("engine instance " + std::to_string(i) + " (" + to_string(v) + ")");
    }
  }
  return r;
}

SuiteResult reduction_suite(const SelftestOptions& opts, QuantifierShape shape, std::vector<std::string>& mismatches) {
  const bool sigma = shape == QuantifierShape::kExistsForall;
  SuiteResult r{sigma ? "sigma2 round trip" : "pi2 round trip", 0, 0};
  gen::Rng rng(opts.seed + (sigma ? 101 : 202));
  std::uniform_int_distribution<std::size_t> size(1, 2);
  for (int i = 0; i < 10 * opts.scale; ++i) {
    Cqbf2 f = gen::random_cqbf(rng, shape, size(rng), size(rng), 3);
    LabeledInstance inst = sigma ? build_sigma2_instance(f) : build_pi2_instance(f);
    bool decided = decide_membership(inst.query, inst.language);
    ++r.checked;
    if (inst.expected_in_language == reference::eval_cqbf(f) && decided == inst.expected_in_language)
      ++r.agreed;
    else
      mismatches.push_back(std::string(sigma ? "sigma2" : "pi2") + " instance " + std::to_string(i) + ": " +
                           f.to_string());
  }
  return r;
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& opts) {
  SelftestReport report;
  report.suites.push_back(engine_suite(opts, report.mismatches));
  report.suites.push_back(reduction_suite(opts, QuantifierShape::kExistsForall, report.mismatches));
  report.suites.push_back(reduction_suite(opts, QuantifierShape::kForallExists, report.mismatches));
  return report;
}

}  // namespace hpcause::cli
