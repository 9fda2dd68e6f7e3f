#include <gtest/gtest.h>

#include "helpers.hpp"
#include "mlayers/render.hpp"

using namespace mlayers;
using namespace mlayers::testing;

TEST(Value, SetsAreSortedAndDeduplicated) {
  EXPECT_EQ(S({A("b"), A("a"), A("b")}), S({A("a"), A("b")}));
  EXPECT_EQ(S({A("b"), A("a")}).size(), 2u);
}

TEST(Value, BagsMergeMultiplicities) {
  Value m = M({{A("a"), 1}, {A("b"), 2}, {A("a"), 3}});
  EXPECT_EQ(m.count_of(A("a")), 4u);
  EXPECT_EQ(m.count_of(A("c")), 0u);
  EXPECT_EQ(m, M({{A("b"), 2}, {A("a"), 4}}));
}

TEST(Value, DistributionsMustSumToOne) {
  EXPECT_THROW(D({{A("a"), R(1, 2)}}), std::invalid_argument);
  EXPECT_THROW(D({{A("a"), R(3, 2)}, {A("b"), R(-1, 2)}}), std::invalid_argument);
  Value d = D({{A("a"), R(1, 4)}, {A("b"), R(1, 2)}, {A("a"), R(1, 4)}});
  EXPECT_EQ(d.weight_of(A("a")), R(1, 2));
  EXPECT_EQ(d.size(), 2u);
}

TEST(Value, ZeroWeightsAreDropped) {
  EXPECT_EQ(D({{A("a"), R(1)}, {A("b"), R(0)}}), Value::dirac(A("a")));
}

TEST(Value, EqualValuesHashEqual) {
  EXPECT_EQ(S({A("a"), A("b")}).hash(), S({A("b"), A("a")}).hash());
}

TEST(Render, CanonicalRoundTrips) {
  std::vector<Value> samples = {
      Value::unit(),
      A("a"),
      W({"a", "b"}),
      S({W({"a"}), W({})}),
      M({{A("a"), 2}, {W({"a", "b"}), 1}}),
      D({{Value::pair(A("a"), A("b")), R(1, 3)}, {A("c"), R(2, 3)}}),
      Value::app(";", std::nullopt, {Value::leaf(A("a")), Value::app("skip", std::nullopt, {})}),
      Value::app("⊕", R(1, 2), {Value::leaf(A("a")), Value::leaf(A("b"))}),
      Value::bag({{Value::word({Value::leaf(A("a")), Value::bag({{Value::word({}), 2}})}), 1}}),
  };
  for (const auto& v : samples) {
    std::string text = canonical(v);
    EXPECT_EQ(parse_literal(text), v) << text;
    EXPECT_EQ(canonical(parse_literal(text)), text);
  }
}

TEST(Render, PrettyWordsAndDistributions) {
  EXPECT_EQ(pretty(S({W({"a", "c"}), W({"b", "c"})})), "{ac, bc}");
  EXPECT_EQ(pretty(S({})), "{}");
  EXPECT_EQ(pretty(W({})), "ε");
  Value d = D({{M({{W({"a", "c"}), 1}}), R(1, 2)}, {M({{W({"b", "c"}), 1}}), R(1, 2)}});
  EXPECT_EQ(pretty_lines(d), "⟨⟨ac⟩⟩: 1/2\n⟨⟨bc⟩⟩: 1/2\n");
}

TEST(Render, LiteralErrorsAreReported) {
  EXPECT_THROW(parse_literal("{a, b"), std::invalid_argument);
  EXPECT_THROW(parse_literal("(a: 1/2)"), std::invalid_argument);
}
