#include <gtest/gtest.h>

#include "hpcause/error.hpp"
#include "hpcause/signature.hpp"

namespace hpcause {
namespace {

TEST(Signature, AssignsIdsInInsertionOrder) {
  Signature sig;
  VarId u = sig.add_exogenous("U", {0, 1});
  VarId x = sig.add_endogenous("X", {0, 1, 2});
  EXPECT_EQ(u.index, 0u);
  EXPECT_EQ(x.index, 1u);
  EXPECT_EQ(sig.size(), 2u);
  EXPECT_EQ(sig.name(x), "X");
  EXPECT_EQ(sig.find("X"), x);
  EXPECT_FALSE(sig.find("Y"));
  ASSERT_EQ(sig.endogenous().size(), 1u);
  EXPECT_EQ(sig.endogenous()[0], x);
  ASSERT_EQ(sig.exogenous().size(), 1u);
  EXPECT_TRUE(sig.is_endogenous(x));
  EXPECT_FALSE(sig.is_endogenous(u));
}

TEST(Signature, RangeQueries) {
  Signature sig;
  VarId x = sig.add_endogenous("X", {3, 5, 7});
  EXPECT_TRUE(sig.in_range(x, 5));
  EXPECT_FALSE(sig.in_range(x, 4));
  EXPECT_EQ(sig.range_index(x, 7), 2);
  EXPECT_EQ(sig.range_index(x, 4), -1);
  EXPECT_FALSE(sig.is_binary());
}

TEST(Signature, BinaryMeansTwoValuesPerVariable) {
  Signature sig;
  sig.add_exogenous("U", {0, 1});
  sig.add_endogenous("X", {0, 1});
  EXPECT_TRUE(sig.is_binary());
  sig.add_endogenous("Y", {1, 2});
  EXPECT_TRUE(sig.is_binary());
  sig.add_endogenous("Z", {0, 1, 2});
  EXPECT_FALSE(sig.is_binary());
}

TEST(Signature, RejectsMalformedVariables) {
  Signature sig;
  sig.add_endogenous("X", {0, 1});
  EXPECT_THROW(sig.add_endogenous("X", {0, 1}), ModelError);
  EXPECT_THROW(sig.add_endogenous("Y", {}), ModelError);
  EXPECT_THROW(sig.add_endogenous("Z", {1, 1}), ModelError);
  EXPECT_THROW(sig.at("nope"), QueryError);
}

TEST(Assignment, NormalizedSortsAndRejectsRepeats) {
  Signature sig;
  VarId a = sig.add_endogenous("A", {0, 1});
  VarId b = sig.add_endogenous("B", {0, 1});
  Assignment n = normalized({{b, 1}, {a, 0}});
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n[0].var, a);
  EXPECT_EQ(n[1].var, b);
  EXPECT_THROW(normalized({{a, 0}, {a, 1}}), QueryError);
  EXPECT_EQ(to_string(sig, n), "A=0, B=1");
}

TEST(ParseError, CarriesOffsetAndShifts) {
  ParseError e("bad", 3);
  EXPECT_EQ(e.offset(), 3u);
  EXPECT_EQ(e.detail(), "bad");
  EXPECT_STREQ(e.what(), "parse error at offset 3: bad");
  EXPECT_EQ(e.shifted(10).offset(), 13u);
}

}  // namespace
}  // namespace hpcause
