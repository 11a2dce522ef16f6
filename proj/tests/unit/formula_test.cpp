#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hpcause/error.hpp"
#include "hpcause/formula.hpp"

namespace hpcause {
namespace {

using testing::data_model;

class FormulaTest : public ::testing::Test {
 protected:
  FormulaTest() : m(data_model("gun.scm")), sig(m.signature()), u(parse_context(testing::kGunContext, sig)) {}
  bool sat(std::string_view text) { return satisfies(m, u, parse_causal_formula(text, sig)); }

  CausalModel m;
  const Signature& sig;
  Context u;
};

TEST_F(FormulaTest, EventFormulasEvaluateOnActualWorld) {
  EXPECT_TRUE(sat("D=1"));
  EXPECT_TRUE(sat("(A=1 & B=0)"));
  EXPECT_FALSE(sat("(A=0 | B=1)"));
  EXPECT_TRUE(sat("!(C=0)"));
  EXPECT_TRUE(sat("(A=1 & C=1 & D=1)"));
}

TEST_F(FormulaTest, InterventionsAreEvaluatedInTheModifiedModel) {
  EXPECT_TRUE(sat("[C<-0] D=0"));
  EXPECT_TRUE(sat("[C<-0, B<-1] D=1"));
  EXPECT_TRUE(sat("([C<-0] D=0 & [A<-0] D=1)"));
  EXPECT_FALSE(sat("!([C<-0] D=0)"));
}

TEST_F(FormulaTest, RepeatedInterventionVariableIsRejected) {
  EXPECT_THROW(CausalFormula::intervened({{sig.at("C"), 0}, {sig.at("C"), 1}}, EventFormula::primitive(sig.at("D"), 1)),
               QueryError);
}

TEST_F(FormulaTest, AbbreviationsExpand) {
  EXPECT_EQ(parse_event_formula("A != 1", sig), parse_event_formula("!(A=1)", sig));
  EXPECT_EQ(parse_event_formula("A = B", sig).to_string(sig), "((A=0 & B=0) | (A=1 & B=1))");
  EXPECT_EQ(parse_event_formula("A >= 1", sig).to_string(sig), "A=1");
  EXPECT_EQ(parse_event_formula("A < 1", sig).to_string(sig), "A=0");
}

TEST_F(FormulaTest, PrintsCanonicallyAndRoundTrips) {
  for (std::string text : {"D=1", "!A=1", "!(A=1 & B=0)", "(A=1 & B=0 & C=1)", "((A=1 & B=1) | C=1)"}) {
    EventFormula f = parse_event_formula(text, sig);
    EXPECT_EQ(f.to_string(sig), text);
    EXPECT_EQ(parse_event_formula(f.to_string(sig), sig), f);
  }
  EXPECT_EQ(parse_causal_formula("[C<-0, A<-1] D=0", sig).to_string(sig), "[A<-1, C<-0] D=0");
}

TEST_F(FormulaTest, RenamedSwapsVariables) {
  EventFormula f = parse_event_formula("(A=1 & B=0)", sig);
  VarId from[] = {sig.at("A"), sig.at("B")};
  VarId to[] = {sig.at("B"), sig.at("C")};
  EXPECT_EQ(f.renamed(from, to).to_string(sig), "(B=1 & C=0)");
}

TEST_F(FormulaTest, ParseErrorsCarryOffsets) {
  auto offset_of = [&](std::string_view text) -> std::size_t {
    try {
      parse_event_formula(text, sig);
    } catch (const ParseError& e) {
      return e.offset();
    }
    ADD_FAILURE() << "no error for " << text;
    return 0;
  };
  EXPECT_EQ(offset_of("Q=1"), 0u);
  EXPECT_EQ(offset_of("(A=1 & B=7)"), 9u);
  EXPECT_EQ(offset_of("(A=1 & B=0 | C=1)"), 11u);
  EXPECT_EQ(offset_of("UA=1"), 0u);  // exogenous
  EXPECT_THROW(parse_event_formula("x", sig), ParseError);
}

TEST_F(FormulaTest, AssignmentsParseInBothKinds) {
  Assignment a = parse_assignment("C=0 & A=1", sig);
  EXPECT_EQ(a, (Assignment{{sig.at("A"), 1}, {sig.at("C"), 0}}));
  EXPECT_THROW(parse_assignment("UA=1", sig), ParseError);
  EXPECT_NO_THROW(parse_assignment("UA=1", sig, VarKind::kExogenous));
  EXPECT_THROW(parse_assignment("A=0, A=1", sig), ParseError);
  EXPECT_THROW(parse_assignment("A=yes", sig), ParseError);
}

TEST(BarePropositions, OnlyWhenEnabled) {
  Signature sig;
  sig.add_endogenous("x", {0, 1});
  sig.add_endogenous("y", {0, 1});
  EXPECT_THROW(parse_event_formula("(x | y)", sig), ParseError);
  EventFormula f = parse_event_formula("(x | !y)", sig, {.bare_propositions = true});
  EXPECT_EQ(f.to_string(sig), "(x=1 | !y=1)");
}

}  // namespace
}  // namespace hpcause
