#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "coxdiv/scalar.hpp"

using coxdiv::QuadExtScalar;
using coxdiv::Rational;

namespace {

using Float = boost::multiprecision::cpp_bin_float_100;

Float approx(const QuadExtScalar& x) {
  static const Float r2 = boost::multiprecision::sqrt(Float(2));
  static const Float r3 = boost::multiprecision::sqrt(Float(3));
  static const Float r6 = boost::multiprecision::sqrt(Float(6));
  Float v = Float(x.numerator(0)) + Float(x.numerator(1)) * r2 + Float(x.numerator(2)) * r3 +
            Float(x.numerator(3)) * r6;
  return v / Float(x.denominator());
}

QuadExtScalar random_scalar(std::mt19937_64& rng, std::int64_t range) {
  auto pick = [&] { return static_cast<std::int64_t>(rng() % (2 * range + 1)) - range; };
  auto den = [&] { return static_cast<std::int64_t>(rng() % 4) + 1; };
  return QuadExtScalar::from_rationals(Rational(pick(), den()), Rational(pick(), den()), Rational(pick(), den()),
                                       Rational(pick(), den()));
}

}  // namespace

TEST(QuadExtScalar, BasisProducts) {
  auto r2 = QuadExtScalar::sqrt2();
  auto r3 = QuadExtScalar::sqrt3();
  EXPECT_EQ(r2 * r2, QuadExtScalar(2));
  EXPECT_EQ(r3 * r3, QuadExtScalar(3));
  auto r6 = r2 * r3;
  EXPECT_EQ(r6 * r6, QuadExtScalar(6));
  EXPECT_EQ(r6 * r2, QuadExtScalar(2) * r3);
  EXPECT_EQ(r6 * r3, QuadExtScalar(3) * r2);
}

TEST(QuadExtScalar, NormalizesRationals) {
  auto x = QuadExtScalar::rational(2, 4);
  EXPECT_EQ(x, QuadExtScalar::rational(1, 2));
  EXPECT_EQ(x.denominator(), 2);
  EXPECT_EQ((x + x), QuadExtScalar(1));
  EXPECT_TRUE((x + x).is_integral());
  EXPECT_EQ(QuadExtScalar::rational(-3, -6), QuadExtScalar::rational(1, 2));
}

TEST(QuadExtScalar, ToString) {
  EXPECT_EQ(QuadExtScalar().to_string(), "0");
  EXPECT_EQ(QuadExtScalar::rational(-1, 2).to_string(), "-1/2");
  EXPECT_EQ((QuadExtScalar(1) + QuadExtScalar(2) * QuadExtScalar::sqrt2()).to_string(), "1+2r2");
  EXPECT_EQ((-QuadExtScalar::sqrt3()).to_string(), "-r3");
}

TEST(QuadExtScalar, SignOfNearCancellations) {
  // 99 - 70 sqrt2 ~ 0.00505 > 0 ; 577 - 408 sqrt2 ~ 0.00087 > 0
  EXPECT_EQ((QuadExtScalar(99) - QuadExtScalar(70) * QuadExtScalar::sqrt2()).sign(), 1);
  EXPECT_EQ((QuadExtScalar(408) * QuadExtScalar::sqrt2() - QuadExtScalar(577)).sign(), -1);
  // sqrt2 + sqrt3 - sqrt6 - ... : 5 + 2 sqrt6 = (sqrt2 + sqrt3)^2
  auto s = QuadExtScalar::sqrt2() + QuadExtScalar::sqrt3();
  EXPECT_EQ(s * s, QuadExtScalar(5) + QuadExtScalar(2) * QuadExtScalar::sqrt2() * QuadExtScalar::sqrt3());
  // sqrt3 - sqrt2 - 0.3178 (just below) : compare 1/sqrt3... use 3 sqrt3 - 5 sqrt2 + 2 sqrt6 - 4
  auto t = QuadExtScalar(3) * QuadExtScalar::sqrt3() - QuadExtScalar(5) * QuadExtScalar::sqrt2() +
           QuadExtScalar(2) * QuadExtScalar::sqrt2() * QuadExtScalar::sqrt3() - QuadExtScalar(4);
  EXPECT_EQ(t.sign(), approx(t) > 0 ? 1 : -1);
}

TEST(QuadExtScalar, RingAxiomsAndSignAgainstHighPrecision) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 5000; ++trial) {
    auto a = random_scalar(rng, 1000);
    auto b = random_scalar(rng, 1000);
    auto c = random_scalar(rng, 1000);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a + b - b, a);
    auto prod = a * b;
    Float f = approx(prod);
    int expected = f > 0 ? 1 : (f < 0 ? -1 : 0);
    ASSERT_EQ(prod.sign(), expected) << prod.to_string();
    ASSERT_EQ(a < b, approx(a) < approx(b));
  }
}

TEST(QuadExtScalar, OverflowIsReported) {
  QuadExtScalar big(INT64_MAX / 2);
  EXPECT_THROW(big * big, coxdiv::Error);
  try {
    (void)(big * big);
  } catch (const coxdiv::Error& e) {
    EXPECT_EQ(e.code(), coxdiv::ErrorCode::arithmetic_overflow);
  }
}
