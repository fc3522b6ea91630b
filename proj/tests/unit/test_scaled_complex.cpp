#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qtet/scaled_complex.hpp"

using namespace qtet;

TEST(ScaledComplex, ZeroAndOne) {
  EXPECT_TRUE(ScaledComplex::zero().is_zero());
  EXPECT_EQ(ScaledComplex::zero().to_complex(), cplx(0.0, 0.0));
  EXPECT_EQ(ScaledComplex::one().to_complex(), cplx(1.0, 0.0));
  EXPECT_TRUE(ScaledComplex::from_complex(0.0).is_zero());
}

TEST(ScaledComplex, PhaseNormalizedToHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(ScaledComplex(0.0, -kPi).phase(), kPi);
  EXPECT_DOUBLE_EQ(ScaledComplex(0.0, 3.0 * kPi).phase(), kPi);
  EXPECT_NEAR(ScaledComplex(0.0, 2.5 * kPi).phase(), 0.5 * kPi, 1e-15);
  EXPECT_DOUBLE_EQ(ScaledComplex::from_real(-2.0).phase(), kPi);
}

TEST(ScaledComplex, RoundTripAndArithmetic) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    const cplx a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const auto sa = ScaledComplex::from_complex(a), sb = ScaledComplex::from_complex(b);
    EXPECT_LT(std::abs(sa.to_complex() - a), 1e-14 * std::abs(a) + 1e-300);
    EXPECT_LT(std::abs((sa * sb).to_complex() - a * b), 1e-13 * std::abs(a * b));
    EXPECT_LT(std::abs((sa / sb).to_complex() - a / b), 1e-13 * std::abs(a / b));
    EXPECT_LT(std::abs((sa + sb).to_complex() - (a + b)), 1e-13 * (std::abs(a) + std::abs(b)));
    EXPECT_LT(std::abs((sa - sb).to_complex() - (a - b)), 1e-13 * (std::abs(a) + std::abs(b)));
    EXPECT_LT(std::abs(sa.sqrt().to_complex() - std::sqrt(a)), 1e-13 * std::abs(a));
    EXPECT_LT(std::abs(sa.pow(3).to_complex() - a * a * a), 1e-12 * std::pow(std::abs(a), 3));
  }
}

TEST(ScaledComplex, SurvivesRangeBeyondDouble) {
  const ScaledComplex big(2000.0, 0.3), small(-2000.0, -0.3);
  EXPECT_NEAR((big * small).log_mag(), 0.0, 1e-12);
  EXPECT_NEAR((big * small).phase(), 0.0, 1e-15);
  EXPECT_TRUE(std::isinf(big.to_complex().real()));
}

TEST(ScaledSum, CancellationAtHugeScale) {
  ScaledSum s;
  s.add(ScaledComplex(1000.0, 0.0));
  s.add(ScaledComplex(1000.0, kPi));
  s.add(ScaledComplex(990.0, 0.0));
  const ScaledComplex v = s.value();
  EXPECT_NEAR(v.log_mag(), 990.0, 1e-9);
  EXPECT_NEAR(v.phase(), 0.0, 1e-9);
}

TEST(ScaledSum, EmptySumIsExactZero) {
  ScaledSum s;
  EXPECT_TRUE(s.value().is_zero());
}

TEST(ScaledSum, MatchesPlainSumInRange) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  ScaledSum s;
  cplx plain = 0.0;
  for (int k = 0; k < 100; ++k) {
    const cplx z{n(rng), n(rng)};
    s.add(ScaledComplex::from_complex(z));
    plain += z;
  }
  EXPECT_LT(std::abs(s.value().to_complex() - plain), 1e-12);
}

TEST(ScaledComplex, RatioOfScaledValues) {
  const ScaledComplex a(500.0, 1.0), b(499.0, 0.5);
  const cplx q = ratio(a, b);
  EXPECT_NEAR(std::abs(q), std::exp(1.0), 1e-12);
  EXPECT_NEAR(std::arg(q), 0.5, 1e-12);
}
