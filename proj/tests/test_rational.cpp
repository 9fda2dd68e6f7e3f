#include <gtest/gtest.h>

#include <random>

#include "mlayers/rational.hpp"

using mlayers::Rational;

TEST(Rational, ReducesAndNormalizesSign) {
  Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(r.str(), "-3/4");
  EXPECT_EQ(Rational(4, 2).str(), "2");
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(3, 4), Rational(-1, 4));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(1, 4) / Rational(1, 2), Rational(1, 2));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"0", "1", "1/2", "-3/7", "22/7"}) EXPECT_EQ(Rational::parse(s).str(), s);
  EXPECT_THROW(Rational::parse("1/"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
}

TEST(Rational, OverflowIsReported) {
  Rational big(std::int64_t(1) << 62);
  EXPECT_THROW(big * big, std::overflow_error);
}

TEST(Rational, OrderMatchesCrossMultiplication) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-50, 50), p(1, 50);
  for (int i = 0; i < 2000; ++i) {
    int a = d(rng), b = p(rng), c = d(rng), e = p(rng);
    EXPECT_EQ(Rational(a, b) < Rational(c, e), a * e < c * b);
    EXPECT_EQ(Rational(a, b) == Rational(c, e), a * e == c * b);
  }
}
