#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zetamix/errors.hpp"
#include "zetamix/special_functions.hpp"

namespace zm = zetamix;
using std::numbers::pi;

TEST(LogGamma, ExactValues) {
  EXPECT_NEAR(zm::log_gamma(1.0), 0.0, 1e-15);
  EXPECT_NEAR(zm::log_gamma(2.0), 0.0, 1e-15);
  EXPECT_NEAR(zm::log_gamma(0.5), 0.5723649429247001, 1e-14);
  EXPECT_NEAR(zm::log_gamma(10.0), std::log(362880.0), 1e-13);
}

TEST(LogGamma, MatchesOracleAbsoluteOnModerateRange) {
  for (double z = 0.5; z <= 50.0; z += 0.37) {
    EXPECT_NEAR(zm::log_gamma(z), oracle::lgamma(z), 1e-13) << "z=" << z;
  }
}

// Beyond ~1e3 the value itself exceeds 1e4, so one ulp is already above 1e-13.
TEST(LogGamma, MatchesOracleRelativeOnLargeRange) {
  for (double z : {123.4, 1e3, 5.5e4, 1e6}) {
    const double ref = oracle::lgamma(z);
    EXPECT_NEAR(zm::log_gamma(z), ref, 4e-16 * std::abs(ref)) << "z=" << z;
  }
}

TEST(LogGamma, Recurrence) {
  for (double z : {0.5, 1.3, 7.9}) {
    const double lhs = std::exp(zm::log_gamma(z + 1.0));
    const double rhs = z * std::exp(zm::log_gamma(z));
    EXPECT_NEAR(lhs / rhs, 1.0, 1e-11) << "z=" << z;
  }
}

TEST(LogGamma, SmallArgument) {
  EXPECT_NEAR(zm::log_gamma(1e-3), oracle::lgamma(1e-3), 1e-13);
  EXPECT_NEAR(zm::log_gamma(0.1), oracle::lgamma(0.1), 1e-13);
}

TEST(LogGamma, RejectsNonPositive) {
  EXPECT_THROW(zm::log_gamma(0.0), zm::DomainError);
  EXPECT_THROW(zm::log_gamma(-1.5), zm::DomainError);
  EXPECT_THROW(zm::log_gamma(std::nan("")), zm::DomainError);
  EXPECT_THROW(zm::log_gamma(INFINITY), zm::DomainError);
}

TEST(RiemannZeta, ClassicalValues) {
  EXPECT_NEAR(zm::riemann_zeta(2.0), pi * pi / 6.0, 1e-12);
  EXPECT_NEAR(zm::riemann_zeta(4.0), std::pow(pi, 4) / 90.0, 1e-12);
  EXPECT_NEAR(zm::riemann_zeta(1.5), 2.6123753486854883, 1e-12);
  EXPECT_NEAR(zm::riemann_zeta(3.0), 1.2020569031595942, 1e-12);
}

TEST(RiemannZeta, MatchesOracle) {
  for (double s : {1.01, 1.1, 1.5, 2.5, 3.7, 6.0, 12.0}) {
    const double ref = oracle::zeta(s);
    EXPECT_NEAR(zm::riemann_zeta(s), ref, 1e-12 * std::max(1.0, ref)) << "s=" << s;
  }
}

TEST(RiemannZeta, ApproachesOneForLargeS) {
  const double z = zm::riemann_zeta(30.0);
  EXPECT_GT(z, 1.0);
  EXPECT_LT(z, 1.0 + 1e-8);
}

TEST(RiemannZeta, RejectsSAtMostOne) {
  EXPECT_THROW(zm::riemann_zeta(1.0), zm::DomainError);
  EXPECT_THROW(zm::riemann_zeta(0.5), zm::DomainError);
}

TEST(HurwitzZeta, KnownValues) {
  EXPECT_NEAR(zm::hurwitz_zeta(2.0, 0), pi * pi / 6.0, 1e-12);
  EXPECT_NEAR(zm::hurwitz_zeta(2.0, 1), pi * pi / 6.0 - 1.0, 1e-12);
  EXPECT_NEAR(zm::hurwitz_zeta(3.0, 5), 0.0163948661225572, 1e-13);
}

TEST(HurwitzZeta, MatchesIntegralRepresentation) {
  for (double s : {1.5, 2.0, 3.0, 4.5}) {
    for (std::uint64_t n : {0u, 1u, 3u, 17u, 250u, 10000u}) {
      const double ref = oracle::hurwitz_tail(s, n);
      EXPECT_NEAR(zm::hurwitz_zeta(s, n), ref, 1e-12 * std::max(1.0, ref))
          << "s=" << s << " n=" << n;
    }
  }
}

TEST(HurwitzZeta, StrictlyDecreasingInN) {
  for (double s : {1.5, 2.0, 3.0}) {
    double prev = zm::hurwitz_zeta(s, 0);
    for (std::uint64_t n = 1; n <= 200; ++n) {
      const double cur = zm::hurwitz_zeta(s, n);
      ASSERT_LT(cur, prev) << "s=" << s << " n=" << n;
      prev = cur;
    }
  }
}

TEST(HurwitzZeta, PartitionIdentity) {
  for (double s : {1.5, 2.0, 3.0}) {
    const double total = zm::riemann_zeta(s);
    for (std::uint64_t n = 0; n <= 100; ++n) {
      EXPECT_NEAR(zm::generalized_harmonic(n, s) + zm::hurwitz_zeta(s, n), total,
                  1e-11)
          << "s=" << s << " n=" << n;
    }
  }
}

TEST(HurwitzZeta, RespectsAccuracyKnobs) {
  zm::SpecialFnAccuracy bad;
  bad.abs_tol = 0.0;
  EXPECT_THROW(zm::hurwitz_zeta(2.0, 3, bad), zm::DomainError);
  bad = {};
  bad.max_terms = 0;
  EXPECT_THROW(zm::riemann_zeta(2.0, bad), zm::DomainError);
}

TEST(GeneralizedHarmonic, MatchesForwardSum) {
  EXPECT_EQ(zm::generalized_harmonic(0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(zm::generalized_harmonic(1, 2.0), 1.0);
  EXPECT_NEAR(zm::generalized_harmonic(3, 2.0), 1.0 + 0.25 + 1.0 / 9.0, 1e-15);
  for (double s : {1.5, 2.0, 3.0}) {
    for (std::uint64_t n : {5u, 60u, 1000u}) {
      EXPECT_NEAR(zm::generalized_harmonic(n, s), oracle::harmonic(n, s), 1e-13);
    }
  }
}
