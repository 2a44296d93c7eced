#include "rhi/scalar.hpp"

#include <gtest/gtest.h>

#include <climits>

using rhi::Rational;
using rhi::ScalarError;
using rhi::Zp;

TEST(Rational, ArithmeticIsExact) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(Rational(2, -4), Rational(-1, 2));
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("-3/9").str(), "-1/3");
  EXPECT_EQ(Rational::parse("42").str(), "42");
  EXPECT_EQ(Rational::parse("6/3").str(), "2");
  EXPECT_THROW(Rational::parse("1/0"), ScalarError);
  EXPECT_THROW(Rational::parse("abc"), ScalarError);
  EXPECT_THROW(Rational::parse("1/"), ScalarError);
}

TEST(Rational, PromotesAndDemotes) {
  Rational big = Rational::parse("123456789012345678901234567890");
  EXPECT_FALSE(big.is_small());
  EXPECT_EQ(big.str(), "123456789012345678901234567890");
  const Rational back = big / big;
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, Rational(1));

  Rational x(LLONG_MAX);
  const Rational y = x * x / x;
  EXPECT_EQ(y, x);
  EXPECT_TRUE(y.is_small());
}

TEST(Rational, NegatingMinimumPromotes) {
  const Rational m(LLONG_MIN);
  const Rational n = -m;
  EXPECT_FALSE(n.is_small());
  EXPECT_EQ(n.str(), "9223372036854775808");
  EXPECT_EQ(-n, m);
}

TEST(Rational, CentralBinomialDoesNotOverflow) {
  // (2l choose l) for l = 40 exceeds 64 bits.
  Rational c(1);
  for (int i = 1; i <= 40; ++i) c = c * Rational(40 + i) / Rational(i);
  EXPECT_EQ(c.str(), "107507208733336176461620");
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational::parse("100000000000000000000"), Rational(LLONG_MAX));
}

TEST(Zp, ArithmeticModP) {
  const Zp a(3, 5), b(4, 5);
  EXPECT_EQ((a + b).value(), 2u);
  EXPECT_EQ((a - b).value(), 4u);
  EXPECT_EQ((a * b).value(), 2u);
  EXPECT_EQ((a / b * b), a);
  EXPECT_EQ(Zp(-1, 5).value(), 4u);
  EXPECT_THROW(Zp(0, 5).inverse(), ScalarError);
}

TEST(Zp, UnboundLiteralsAdoptModulus) {
  const Zp one = Zp(1);
  const Zp x(4, 7);
  EXPECT_EQ((x + one).value(), 5u);
  EXPECT_EQ((one + x).modulus(), 7u);
  EXPECT_TRUE((Zp(7) * x).is_zero());
}

TEST(Zp, CharacteristicTwoSigns) {
  EXPECT_EQ(-Zp(1, 2), Zp(1, 2));
}

TEST(FieldSpec, PrimesOnly) {
  EXPECT_NO_THROW(rhi::FieldSpec::prime(5));
  EXPECT_THROW(rhi::FieldSpec::prime(6), ScalarError);
  EXPECT_THROW(rhi::FieldSpec::prime(1), ScalarError);
  EXPECT_TRUE(rhi::is_prime(1000003));
  EXPECT_FALSE(rhi::is_prime(1000001));
}
