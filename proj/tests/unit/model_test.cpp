#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hpcause/error.hpp"
#include "hpcause/model.hpp"

namespace hpcause {
namespace {

using testing::data_model;
using testing::model_from;

TEST(Model, SolvesRockThrowingWithHits) {
  CausalModel m = data_model("rock_hits.scm");
  const Signature& sig = m.signature();
  TotalState s = solve(m, parse_context("U=1", sig));
  EXPECT_EQ(s[sig.at("SH")], 1);
  EXPECT_EQ(s[sig.at("BH")], 0);
  EXPECT_EQ(s[sig.at("BS")], 1);
  TotalState none = solve(m, parse_context("U=0", sig));
  EXPECT_EQ(none[sig.at("BS")], 0);
}

TEST(Model, InterventionOverridesEquationAndLastValueWins) {
  CausalModel m = data_model("rock_hits.scm");
  const Signature& sig = m.signature();
  Context u = parse_context("U=1", sig);
  VarId st = sig.at("ST");
  CausalModel no_suzy = intervene(m, {{st, 0}});
  EXPECT_EQ(no_suzy.fixed_value(st), 0);
  TotalState s = solve(no_suzy, u);
  EXPECT_EQ(s[sig.at("BH")], 1);
  EXPECT_EQ(s[sig.at("BS")], 1);

  CausalModel twice = intervene(m, {{st, 0}, {st, 1}});
  EXPECT_EQ(solve(twice, u)[sig.at("BH")], 0);
  CausalModel nested = intervene(intervene(m, {{st, 0}}), {{st, 1}});
  EXPECT_EQ(solve(nested, u), solve(m, u));
  // The original model is untouched.
  EXPECT_FALSE(m.fixed_value(st));
}

TEST(Model, InterventionRejectsExogenousAndOutOfRange) {
  CausalModel m = data_model("rock_hits.scm");
  const Signature& sig = m.signature();
  EXPECT_THROW(intervene(m, {{sig.at("U"), 0}}), QueryError);
  EXPECT_THROW(intervene(m, {{sig.at("ST"), 2}}), QueryError);
}

TEST(Model, ContextMustBeTotalAndInRange) {
  CausalModel m = data_model("gun.scm");
  const Signature& sig = m.signature();
  EXPECT_THROW(Context(sig, {{sig.at("UA"), 1}}), QueryError);
  EXPECT_THROW(Context(sig, {{sig.at("UA"), 1}, {sig.at("UB"), 2}, {sig.at("UC"), 0}}), QueryError);
  EXPECT_THROW(Context(sig, {{sig.at("UA"), 1}, {sig.at("UB"), 0}, {sig.at("UC"), 0}, {sig.at("A"), 0}}),
               QueryError);
  EXPECT_NO_THROW(Context(sig, {{sig.at("UC"), 1}, {sig.at("UA"), 1}, {sig.at("UB"), 0}}));
}

TEST(Model, DependencyGraphAndOrder) {
  CausalModel m = data_model("rock_hits.scm");
  const Signature& sig = m.signature();
  DependencyGraph g = dependency_graph(m);
  auto edge = [&](const char* a, const char* b) { return std::make_pair(sig.at(a), sig.at(b)); };
  std::vector<std::pair<VarId, VarId>> expected{edge("ST", "SH"), edge("BT", "BH"), edge("SH", "BH"),
                                                edge("SH", "BS"), edge("BH", "BS")};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(g.edges, expected);
  auto pos = [&](const char* n) {
    return std::find(g.order.begin(), g.order.end(), sig.at(n)) - g.order.begin();
  };
  EXPECT_LT(pos("ST"), pos("SH"));
  EXPECT_LT(pos("SH"), pos("BH"));
  EXPECT_LT(pos("BH"), pos("BS"));
  EXPECT_EQ(g.order.size(), 5u);
}

TEST(Model, InterventionCutsIncomingEdges) {
  CausalModel m = data_model("rock_hits.scm");
  const Signature& sig = m.signature();
  DependencyGraph g = dependency_graph(intervene(m, {{sig.at("SH"), 0}}));
  for (const auto& [from, to] : g.edges) EXPECT_NE(to, sig.at("SH"));
}

TEST(Model, ValidationReportsCycle) {
  auto sig = std::make_shared<Signature>();
  VarId u = sig->add_exogenous("U", {0, 1});
  VarId a = sig->add_endogenous("A", {0, 1});
  VarId b = sig->add_endogenous("B", {0, 1});
  Expression ab[] = {Expression::variable(u), Expression::variable(b)};
  CausalModel m(sig, {std::nullopt, Expression::all_of(ab), Expression::variable(a)});
  EXPECT_FALSE(m.acyclic());
  ValidationReport r = validate_model(m);
  EXPECT_FALSE(r.valid());
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations[0].kind, ViolationKind::kCycle);
  EXPECT_THROW(solve(m, Context(*sig, {{u, 0}})), ModelError);
  EXPECT_THROW(dependency_graph(m), ModelError);
  // Breaking the cycle by intervention makes the model solvable.
  EXPECT_NO_THROW(solve(intervene(m, {{a, 1}}), Context(*sig, {{u, 0}})));
}

TEST(Model, ValidationReportsSelfReferenceMissingAndRange) {
  auto sig = std::make_shared<Signature>();
  VarId u = sig->add_exogenous("U", {0, 1});
  VarId a = sig->add_endogenous("A", {0, 1});
  sig->add_endogenous("B", {0, 1});
  VarId c = sig->add_endogenous("C", {0, 1});
  Expression sum_parts[] = {Expression::variable(u), Expression::constant(1)};
  CausalModel m(sig, {std::nullopt, Expression::negate(Expression::variable(a)), std::nullopt,
                      Expression::sum(sum_parts)});
  ValidationReport r = validate_model(m);
  EXPECT_FALSE(r.valid());
  auto has = [&](ViolationKind k) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.kind == k; });
  };
  EXPECT_TRUE(has(ViolationKind::kSelfReference));
  EXPECT_TRUE(has(ViolationKind::kMissingEquation));
  ASSERT_TRUE(has(ViolationKind::kRangeViolation));
  for (const auto& v : r.violations)
    if (v.kind == ViolationKind::kRangeViolation) {
      EXPECT_EQ(v.variables.front(), c);
      EXPECT_EQ(v.produced, 2);
      EXPECT_EQ(v.witness, (Assignment{{u, 1}}));
    }
}

TEST(Model, RangeViolationOnlyFailsSolveWhereItOccurs) {
  CausalModel m = model_from(
      "variables\n U : exo : {0,1}\n A : endo : {0,1}\n"
      "equations\n A := (U + 1)\n");
  const Signature& sig = m.signature();
  EXPECT_EQ(solve(m, parse_context("U=0", sig))[sig.at("A")], 1);
  EXPECT_THROW(solve(m, parse_context("U=1", sig)), ModelError);
}

TEST(Model, BinaryFlagFollowsRanges) {
  EXPECT_TRUE(validate_model(data_model("gun.scm")).binary);
  EXPECT_FALSE(validate_model(data_model("firing_squad.scm")).binary);
}

TEST(Model, SolveIsDeterministic) {
  CausalModel m = data_model("voting.scm");
  Context u = parse_context("U1=1, U2=1, U3=1, U4=1, U5=1, U6=0, U7=0, U8=0, U9=0, U10=0, U11=1", m.signature());
  TotalState first = solve(m, u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(solve(m, u), first);
  EXPECT_EQ(first[m.signature().at("WIN")], 1);
}

}  // namespace
}  // namespace hpcause
