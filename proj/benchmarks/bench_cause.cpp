#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "hpcause/cause.hpp"
#include "hpcause/qbf.hpp"
#include "hpcause/random.hpp"
#include "hpcause/responsibility.hpp"
#include "hpcause/text_format.hpp"

namespace {

using namespace hpcause;

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(HPCAUSE_DATA_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CauseQuery query_file(const std::string& name) {
  QueryFile f = parse_query_file(read_data(name));
  return bind_query(f, parse_model(read_data(f.model_path.text)));
}

void BM_IsCauseGunOriginal(benchmark::State& state) {
  CauseQuery q = query_file("gun_a_original.query");
  for (auto _ : state) benchmark::DoNotOptimize(is_cause(q));
}
BENCHMARK(BM_IsCauseGunOriginal);

void BM_IsCauseRockHitsBilly(benchmark::State& state) {
  CauseQuery q = query_file("rock_hits_billy.query");
  for (auto _ : state) benchmark::DoNotOptimize(is_cause(q));
}
BENCHMARK(BM_IsCauseRockHitsBilly);

void BM_VotingResponsibility(benchmark::State& state) {
  CauseQuery q = query_file(state.range(0) ? "voting_11_0.query" : "voting_6_5.query");
  for (auto _ : state) benchmark::DoNotOptimize(degree_of_responsibility(q));
}
BENCHMARK(BM_VotingResponsibility)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FiringSquadBlame(benchmark::State& state) {
  CausalModel m = parse_model(read_data("firing_squad.scm"));
  std::vector<Situation> situations;
  std::vector<Rational> probs;
  for (const auto& rec : parse_state_file(read_data("firing_squad.state"))) {
    situations.push_back({m, parse_context(rec.context.text, m.signature())});
    probs.push_back(rec.probability);
  }
  EpistemicState k(std::move(situations), std::move(probs));
  Assignment setting{{m.signature().at("S3"), 1}};
  EventFormula death = parse_event_formula("D=1", m.signature());
  for (auto _ : state) benchmark::DoNotOptimize(degree_of_blame(k, setting, death));
}
BENCHMARK(BM_FiringSquadBlame)->Unit(benchmark::kMillisecond);

// Random binary queries with n endogenous variables.
void BM_RandomIsCause(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  gen::Rng rng(42);
  gen::ModelShape shape{.min_endogenous = n, .max_endogenous = n, .exogenous = 2, .max_range = 2, .max_depth = 3};
  std::vector<CauseQuery> qs;
  while (qs.size() < 32) {
    CausalModel m = gen::random_model(rng, shape);
    Context u = gen::random_context(rng, m.signature());
    qs.emplace_back(m, u, gen::random_candidate(rng, m, u, 2), gen::random_event(rng, m.signature(), 2));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(is_cause(qs[i++ % qs.size()]));
}
BENCHMARK(BM_RandomIsCause)->DenseRange(4, 12, 4)->Unit(benchmark::kMicrosecond);

void BM_ReductionRoundTrip(benchmark::State& state) {
  const bool sigma = state.range(0) == 0;
  const auto size = static_cast<std::size_t>(state.range(1));
  gen::Rng rng(7);
  std::vector<LabeledInstance> instances;
  for (int i = 0; i < 8; ++i) {
    Cqbf2 f = gen::random_cqbf(rng, sigma ? QuantifierShape::kExistsForall : QuantifierShape::kForallExists, size,
                               size, 3);
    instances.push_back(sigma ? build_sigma2_instance(f) : build_pi2_instance(f));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const LabeledInstance& inst = instances[i++ % instances.size()];
    benchmark::DoNotOptimize(decide_membership(inst.query, inst.language));
  }
}
BENCHMARK(BM_ReductionRoundTrip)->ArgsProduct({{0, 1}, {1, 2, 3}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
