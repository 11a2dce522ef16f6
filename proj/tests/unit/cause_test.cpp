#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hpcause/cause.hpp"
#include "hpcause/error.hpp"
#include "hpcause/reference.hpp"

namespace hpcause {
namespace {

using testing::assign;
using testing::data_model;
using testing::kGunContext;
using testing::make_query;
using testing::model_from;
using testing::witness;

TEST(Ac1, ChecksActualValuesAndEffect) {
  CausalModel m = data_model("rock_hits.scm");
  EXPECT_TRUE(check_ac1(make_query(m, "U=1", "ST=1", "BS=1")));
  EXPECT_FALSE(check_ac1(make_query(m, "U=1", "ST=0", "BS=1")));
  EXPECT_FALSE(check_ac1(make_query(m, "U=1", "ST=1", "BS=0")));
  EXPECT_TRUE(check_ac1(make_query(data_model("gun.scm"), kGunContext, "A=1", "D=1")));
}

TEST(Ac2, GunWitnessHoldsOnlyUnderOriginal) {
  CausalModel m = data_model("gun.scm");
  Witness w = witness(m, "B=1, C=0", "A=0");
  CauseQuery original = make_query(m, kGunContext, "A=1", "D=1", Variant::kOriginal);
  CauseQuery updated = original.with_variant(Variant::kUpdated);
  EXPECT_TRUE(check_ac2_with_witness(original, w));
  EXPECT_FALSE(check_ac2_with_witness(updated, w));

  Ac2Diagnosis d = diagnose_ac2(updated, w);
  EXPECT_TRUE(d.ac2a);
  EXPECT_FALSE(d.ac2b);
  EXPECT_EQ(d.w_subset, assign(m, "C=0"));
  EXPECT_TRUE(d.z_subset.empty());
  EXPECT_TRUE(diagnose_ac2(original, w).holds());
}

TEST(Ac2, BillyWitnessFailsThroughBillysHit) {
  CausalModel m = data_model("rock_hits.scm");
  CauseQuery q = make_query(m, "U=1", "BT=1", "BS=1");
  Witness w = witness(m, "ST=0", "BT=0");
  EXPECT_FALSE(check_ac2_with_witness(q, w));
  Ac2Diagnosis d = diagnose_ac2(q, w);
  EXPECT_TRUE(d.ac2a);
  EXPECT_FALSE(d.ac2b);
  EXPECT_EQ(d.z_subset, std::vector<VarId>{m.signature().at("BH")});
}

TEST(Ac2, EffectOnTheCandidateItself) {
  CausalModel m = model_from("variables\n U : exo : {0,1}\n X : endo : {0,1}\nequations\n X := U\n");
  for (Variant v : {Variant::kUpdated, Variant::kOriginal}) {
    CauseQuery q = make_query(m, "U=1", "X=1", "X=1", v);
    EXPECT_TRUE(check_ac2_with_witness(q, witness(m, "", "X=0")));
    auto w = find_ac2_witness(q);
    ASSERT_TRUE(w);
    EXPECT_TRUE(w->contingency.empty());
    EXPECT_EQ(w->alternative, assign(m, "X=0"));
    EXPECT_TRUE(is_cause(q).is_cause);
  }
}

TEST(Ac2, MalformedWitnessIsAQueryError) {
  CausalModel m = data_model("gun.scm");
  CauseQuery q = make_query(m, kGunContext, "A=1", "D=1");
  EXPECT_THROW(check_ac2_with_witness(q, witness(m, "A=0", "A=0")), QueryError);
  EXPECT_THROW(check_ac2_with_witness(q, witness(m, "", "B=0")), QueryError);
}

TEST(FindWitness, NaiveRockBillyUsesSuzyAsContingency) {
  CausalModel m = data_model("rock_naive.scm");
  auto w = find_ac2_witness(make_query(m, "U=1", "BT=1", "BS=1"));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, witness(m, "ST=0", "BT=0"));
}

TEST(FindWitness, AbsentForBillyWithHits) {
  CausalModel m = data_model("rock_hits.scm");
  EXPECT_FALSE(find_ac2_witness(make_query(m, "U=1", "BT=1", "BS=1")));
  EXPECT_FALSE(reference::first_witness(make_query(m, "U=1", "BT=1", "BS=1")));
}

TEST(FindWitness, GunOriginalFindsFirstCanonicalWitness) {
  CausalModel m = data_model("gun.scm");
  CauseQuery q = make_query(m, kGunContext, "A=1", "D=1", Variant::kOriginal);
  auto w = find_ac2_witness(q);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, witness(m, "B=1, C=0", "A=0"));
  EXPECT_EQ(w, reference::first_witness(q));
}

TEST(Ac3, SingletonsAreAlwaysMinimal) {
  CausalModel m = data_model("rock_naive.scm");
  EXPECT_FALSE(check_ac3(make_query(m, "U=1", "ST=1", "BS=1")));
  EXPECT_FALSE(check_ac3(make_query(m, "U=1", "BS=1", "BS=1")));
}

TEST(Ac3, NaiveRockConjunctionHasSuzyAsViolator) {
  CausalModel m = data_model("rock_naive.scm");
  CauseQuery q = make_query(m, "U=1", "ST=1, BT=1", "BS=1");
  auto v = check_ac3(q);
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, assign(m, "ST=1"));
  EXPECT_EQ(v, reference::ac3_violator(q));
  EXPECT_FALSE(is_cause(q).is_cause);
}

TEST(IsCause, PaperVerdicts) {
  CausalModel hits = data_model("rock_hits.scm");
  CausalModel naive = data_model("rock_naive.scm");
  CausalModel gun = data_model("gun.scm");
  EXPECT_TRUE(is_cause(make_query(hits, "U=1", "ST=1", "BS=1")).is_cause);
  EXPECT_FALSE(is_cause(make_query(hits, "U=1", "BT=1", "BS=1")).is_cause);
  EXPECT_TRUE(is_cause(make_query(naive, "U=1", "ST=1", "BS=1")).is_cause);
  EXPECT_TRUE(is_cause(make_query(naive, "U=1", "BT=1", "BS=1")).is_cause);
  EXPECT_TRUE(is_cause(make_query(gun, kGunContext, "A=1", "D=1", Variant::kOriginal)).is_cause);
  EXPECT_FALSE(is_cause(make_query(gun, kGunContext, "A=1", "D=1", Variant::kUpdated)).is_cause);
  EXPECT_TRUE(is_cause(make_query(gun, kGunContext, "C=1", "D=1", Variant::kUpdated)).is_cause);
}

TEST(IsCause, VerdictFieldsAreFilledIndependently) {
  CausalModel gun = data_model("gun.scm");
  CauseVerdict v = is_cause(make_query(gun, kGunContext, "A=1", "D=1", Variant::kUpdated));
  EXPECT_TRUE(v.ac1);
  EXPECT_FALSE(v.ac2_witness);
  EXPECT_FALSE(v.ac3_violator);
}

// Under the updated definition a minimal cause can have two conjuncts. Found
// by exhaustive search over small binary models and confirmed by the
// brute-force reference.
TEST(IsCause, UpdatedMinimalCauseNeedNotBeSingleton) {
  CausalModel m = model_from(
      "variables\n U : exo : {0,1}\n V1 : endo : {0,1}\n V2 : endo : {0,1}\n V3 : endo : {0,1}\n"
      "equations\n V1 := 0\n V2 := V1\n V3 := V1\n");
  const char* effect = "(V1=0 | (V2=0 & V3=0))";
  for (const char* u : {"U=0", "U=1"}) {
    CauseQuery pair = make_query(m, u, "V2=0, V3=0", effect, Variant::kUpdated);
    CauseVerdict v = is_cause(pair);
    EXPECT_TRUE(v.is_cause);
    ASSERT_TRUE(v.ac2_witness);
    EXPECT_EQ(*v.ac2_witness, witness(m, "V1=1", "V2=0, V3=1"));
    EXPECT_EQ(v.ac2_witness, reference::first_witness(pair));
    EXPECT_TRUE(reference::is_cause(pair).is_cause);
    EXPECT_FALSE(find_ac2_witness(make_query(m, u, "V2=0", effect)));
    EXPECT_FALSE(find_ac2_witness(make_query(m, u, "V3=0", effect)));

    CauseQuery original = pair.with_variant(Variant::kOriginal);
    CauseVerdict ov = is_cause(original);
    EXPECT_FALSE(ov.is_cause);
    ASSERT_TRUE(ov.ac3_violator);
    EXPECT_EQ(*ov.ac3_violator, assign(m, "V2=0"));
    EXPECT_EQ(find_ac2_witness(make_query(m, u, "V2=0", effect, Variant::kOriginal)),
              witness(m, "V1=1, V3=0", "V2=1"));
  }
}

TEST(Enumerate, NaiveRockListsBothThrowersAndTheEffect) {
  CausalModel m = data_model("rock_naive.scm");
  const Signature& sig = m.signature();
  auto causes = enumerate_causes(m, parse_context("U=1", sig), parse_event_formula("BS=1", sig), Variant::kUpdated, 1);
  std::vector<Assignment> got;
  for (const auto& c : causes) got.push_back(c.cause);
  EXPECT_EQ(got, (std::vector<Assignment>{assign(m, "ST=1"), assign(m, "BT=1"), assign(m, "BS=1")}));
}

TEST(Enumerate, HitsModelExcludesBilly) {
  CausalModel m = data_model("rock_hits.scm");
  const Signature& sig = m.signature();
  auto causes = enumerate_causes(m, parse_context("U=1", sig), parse_event_formula("BS=1", sig), Variant::kUpdated, 1);
  auto has = [&](const char* text) {
    return std::any_of(causes.begin(), causes.end(), [&](const FoundCause& c) { return c.cause == assign(m, text); });
  };
  EXPECT_TRUE(has("ST=1"));
  EXPECT_TRUE(has("SH=1"));
  EXPECT_FALSE(has("BT=1"));
  EXPECT_FALSE(has("BH=0"));
}

TEST(Enumerate, EmptyWhenEffectIsFalse) {
  CausalModel m = data_model("rock_naive.scm");
  const Signature& sig = m.signature();
  EXPECT_TRUE(enumerate_causes(m, parse_context("U=0", sig), parse_event_formula("BS=1", sig), Variant::kUpdated, 3)
                  .empty());
}

TEST(Enumerate, ThreadCountDoesNotChangeTheResult) {
  CausalModel m = data_model("gun.scm");
  const Signature& sig = m.signature();
  Context u = parse_context(kGunContext, sig);
  EventFormula d = parse_event_formula("D=1", sig);
  auto one = enumerate_causes(m, u, d, Variant::kOriginal, 3, {.threads = 1});
  auto four = enumerate_causes(m, u, d, Variant::kOriginal, 3, {.threads = 4});
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].cause, four[i].cause);
    EXPECT_EQ(one[i].witness, four[i].witness);
  }
}

TEST(Budget, ExhaustionIsAnErrorNotAVerdict) {
  CausalModel m = data_model("voting.scm");
  CauseQuery q = make_query(m, "U1=1, U2=1, U3=1, U4=1, U5=1, U6=1, U7=1, U8=1, U9=1, U10=1, U11=1", "V1=1", "WIN=1");
  EXPECT_THROW(find_ac2_witness(q, {.budget = 50}), BudgetExceeded);
  try {
    is_cause(q, {.budget = 50});
    ADD_FAILURE();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.limit(), 50u);
  }
  // A genuine negative answer within budget is reported as such.
  CausalModel hits = data_model("rock_hits.scm");
  EXPECT_FALSE(find_ac2_witness(make_query(hits, "U=1", "BT=1", "BS=1"), {.budget = 10'000}));
}

TEST(Search, RepeatedRunsAreIdentical) {
  CausalModel m = data_model("gun.scm");
  CauseQuery q = make_query(m, kGunContext, "A=1", "D=1", Variant::kOriginal);
  SearchStats first_stats;
  CauseVerdict first = is_cause(q, {}, &first_stats);
  for (int i = 0; i < 3; ++i) {
    SearchStats s;
    CauseVerdict v = is_cause(q, {}, &s);
    EXPECT_EQ(v.ac2_witness, first.ac2_witness);
    EXPECT_EQ(v.ac3_violator, first.ac3_violator);
    EXPECT_EQ(s.solver_calls, first_stats.solver_calls);
  }
  EXPECT_GT(first_stats.solver_calls, 0u);
}

TEST(CauseQuery, RejectsMisfits) {
  CausalModel m = data_model("gun.scm");
  const Signature& sig = m.signature();
  Context u = parse_context(kGunContext, sig);
  EventFormula d = parse_event_formula("D=1", sig);
  EXPECT_THROW(CauseQuery(m, u, {}, d), QueryError);
  EXPECT_THROW(CauseQuery(m, u, {{sig.at("UA"), 1}}, d), QueryError);
  EXPECT_THROW(CauseQuery(m, u, {{sig.at("A"), 5}}, d), QueryError);
  EXPECT_THROW(CauseQuery(m, u, {{sig.at("A"), 1}}, EventFormula::primitive(sig.at("UA"), 1)), QueryError);
}

}  // namespace
}  // namespace hpcause
