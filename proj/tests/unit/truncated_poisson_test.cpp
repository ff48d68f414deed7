// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/truncated_poisson.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dicore/error.hpp"
#include "oracles.hpp"

namespace dicore {
namespace {

constexpr double kE = std::numbers::e;

std::vector<double> z_grid() {
  std::vector<double> zs;
  for (double z = 0.1; z <= 10.0 + 1e-12; z += 0.1) zs.push_back(z);
  return zs;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double factorial(int n) { return std::tgamma(n + 1.0); }

TEST(TailSeries, SmallCases) {
  EXPECT_NEAR(tail_series(1.0, 0), kE, 1e-14);
  EXPECT_NEAR(tail_series(1.0, 1), kE - 1.0, 1e-14);
  EXPECT_NEAR(tail_series(1.0, 2), kE - 2.0, 1e-14);
  EXPECT_DOUBLE_EQ(tail_series(2.5, -3), std::exp(2.5));
}

TEST(TailSeries, RejectsNonpositiveRate) {
  EXPECT_THROW(tail_series(0.0, 1), DomainError);
  EXPECT_THROW(tail_prob(-1.0, 1), DomainError);
  EXPECT_THROW(cond_mean(0.0, 2), DomainError);
  EXPECT_THROW(cond_variance(-0.5, 2), DomainError);
  EXPECT_THROW(cond_second_factorial_moment(0.0, 2), DomainError);
}

TEST(TailProb, SmallCases) {
  for (double z : {0.01, 1.0, 7.5}) EXPECT_EQ(tail_prob(z, 0), 1.0);
  EXPECT_NEAR(tail_prob(1.0, 2), 1.0 - 2.0 / kE, 1e-15);
  EXPECT_NEAR(tail_prob(2.0, 3), 1.0 - 5.0 * std::exp(-2.0), 1e-15);
}

TEST(TailProb, MatchesIncompleteGammaOracle) {
  for (int k = 1; k <= 12; ++k) {
    for (double z : {1e-4, 1e-2, 0.3, 1.0, 2.5, 7.0, 15.0, 40.0, 90.0, 300.0}) {
      EXPECT_LT(rel(tail_prob(z, k), oracle::tail_prob(z, k)), 1e-13) << "z=" << z << " k=" << k;
    }
  }
}

TEST(LogTailSeries, FiniteBeyondOverflow) {
  for (int k : {0, 1, 3, 8}) {
    const double z = 900.0;
    EXPECT_TRUE(std::isfinite(log_tail_series(z, k)));
    EXPECT_NEAR(log_tail_series(z, k), oracle::log_tail_series(z, k), 1e-12 * z);
  }
  EXPECT_NEAR(log_tail_series(1e-3, 4), 4 * std::log(1e-3) - std::log(24.0) + std::log1p(1e-3 / 5 + 1e-6 / 30 + 1e-9 / 210), 1e-13);
}

TEST(CondMean, Examples) {
  for (double z : {0.2, 1.0, 6.0}) EXPECT_DOUBLE_EQ(cond_mean(z, 0), z);
  EXPECT_NEAR(cond_mean(1e-9, 3), 3.0, 1e-8);
  // 30-digit series evaluation: f_1(1)/f_2(1).
  EXPECT_NEAR(cond_mean(1.0, 2), 2.39221119117733281, 1e-14);
  EXPECT_NEAR(cond_mean(1.0, 2), (kE - 1.0) / (kE - 2.0), 1e-14);
}

TEST(CondMean, MatchesOracleOnGrid) {
  for (int k = 0; k <= 6; ++k) {
    for (double z : z_grid()) EXPECT_LT(rel(cond_mean(z, k), oracle::cond_mean(z, k)), 1e-12);
  }
}

TEST(CondMean, StrictlyIncreasingWithInfimumK) {
  for (int k = 0; k <= 6; ++k) {
    double prev = cond_mean(1e-6, k);
    EXPECT_GE(prev, k);
    EXPECT_LT(prev - k, 1e-5 + (k == 0 ? 1e-6 : 0.0));
    for (double z : z_grid()) {
      const double m = cond_mean(z, k);
      EXPECT_GT(m, prev) << "z=" << z << " k=" << k;
      EXPECT_GT(m, k);
      prev = m;
    }
  }
}

TEST(SecondFactorialMoment, Examples) {
  for (double z : {0.5, 3.0}) EXPECT_DOUBLE_EQ(cond_second_factorial_moment(z, 0), z * z);
  // e / f_2(1), 30-digit series evaluation.
  EXPECT_NEAR(cond_second_factorial_moment(1.0, 2), 3.78442238235466563, 1e-13);
  EXPECT_NEAR(cond_second_factorial_moment(1.0, 2), kE / (kE - 2.0), 1e-13);
  EXPECT_NEAR(cond_second_factorial_moment(1.7, 3), cond_mean(1.7, 3) * cond_mean(1.7, 2), 1e-13);
}

TEST(SecondFactorialMoment, FactorialMomentIdentityOnGrid) {
  for (int k = 0; k <= 6; ++k) {
    for (double z : z_grid()) {
      EXPECT_LT(rel(cond_second_factorial_moment(z, k), cond_mean(z, k) * cond_mean(z, k - 1)), 1e-12);
    }
  }
}

TEST(CondVariance, Examples) {
  for (double z : {0.4, 2.0, 9.0}) EXPECT_NEAR(cond_variance(z, 0), z, 1e-12 * z);
  EXPECT_NEAR(cond_variance(1.0, 2), 0.453959190337924876, 1e-13);
  for (int k = 1; k <= 4; ++k) EXPECT_LT(cond_variance(1e-7, k), 1e-6);
}

TEST(CondVariance, PositiveAndEqualToScaledDerivativeOfMean) {
  for (int k = 0; k <= 6; ++k) {
    for (double z : z_grid()) {
      const double v = cond_variance(z, k);
      EXPECT_GT(v, 0.0);
      const double h = 1e-5 * z;
      const double deriv = (cond_mean(z + h, k) - cond_mean(z - h, k)) / (2 * h);
      EXPECT_NEAR(v, z * deriv, 1e-6 * (1.0 + v));
    }
  }
}

TEST(SolveZ, Examples) {
  for (double mu : {0.3, 1.0, 17.0}) EXPECT_NEAR(solve_z(mu, 0), mu, 1e-12 * mu);
  // Bisection on cond_mean(z,2) = 3 in 30-digit arithmetic.
  EXPECT_NEAR(solve_z(3.0, 2), 2.14912579990706254, 1e-9);
  EXPECT_NEAR(cond_mean(solve_z(4.2, 3), 3), 4.2, 1e-9);
  EXPECT_NEAR(solve_z(4.2, 3), 3.06307478148233837, 1e-9);
  EXPECT_NEAR(solve_z(2.5, 2), 1.22993320038195753, 1e-9);
}

TEST(SolveZ, RoundTripAcrossTargets) {
  for (int k = 0; k <= 6; ++k) {
    for (double excess : {1e-6, 1e-3, 0.05, 0.5, 1.0, 3.0, 10.0, 80.0}) {
      const double target = k + excess;
      const double z = solve_z(target, k);
      EXPECT_GT(z, 0.0);
      EXPECT_LE(std::abs(cond_mean(z, k) - target), 1e-10 * target) << "k=" << k << " target=" << target;
    }
  }
}

TEST(SolveZ, NoRootAtOrBelowCutoff) {
  EXPECT_THROW(solve_z(2.0, 2), PreconditionError);
  EXPECT_THROW(solve_z(1.5, 2), PreconditionError);
  EXPECT_THROW(solve_z(0.0, 0), PreconditionError);
}

TEST(Invariants, Recurrence) {
  for (int k = 1; k <= 6; ++k) {
    for (double z : z_grid()) {
      const double expected = tail_series(z, k - 1) - std::pow(z, k - 1) / factorial(k - 1);
      EXPECT_LT(rel(tail_series(z, k), expected), 1e-12) << "z=" << z << " k=" << k;
    }
  }
}

TEST(Invariants, TailProbIsScaledTailSeries) {
  for (int k = 0; k <= 6; ++k) {
    for (double z : z_grid()) {
      const double p = tail_prob(z, k);
      EXPECT_GT(p, 0.0);
      EXPECT_LE(p, 1.0);
      EXPECT_LT(rel(p, std::exp(-z) * tail_series(z, k)), 1e-12);
    }
  }
}

TEST(Invariants, LogDerivativeDecreases) {
  const auto zs = z_grid();
  for (int k = 1; k <= 6; ++k) {
    for (std::size_t i = 1; i < zs.size(); ++i) {
      const double prev = std::exp(log_tail_series(zs[i - 1], k - 1) - log_tail_series(zs[i - 1], k));
      const double cur = std::exp(log_tail_series(zs[i], k - 1) - log_tail_series(zs[i], k));
      EXPECT_LE(cur, prev * (1 + 1e-12)) << "z=" << zs[i] << " k=" << k;
    }
  }
}

TEST(Invariants, LogConcavity) {
  const auto zs = z_grid();
  for (int k = 0; k <= 6; ++k) {
    for (std::size_t i = 0; i < zs.size(); i += 3) {
      for (std::size_t j = i; j < zs.size(); j += 3) {
        const double mid = 0.5 * (zs[i] + zs[j]);
        const double lhs = 2.0 * log_tail_series(mid, k);
        const double rhs = log_tail_series(zs[i], k) + log_tail_series(zs[j], k);
        EXPECT_GE(lhs, rhs - 1e-12 * std::abs(rhs)) << zs[i] << " " << zs[j] << " k=" << k;
      }
    }
  }
}

TEST(FloorMass, MatchesDefinition) {
  for (int k = 1; k <= 5; ++k) {
    for (double z : {0.1, 1.0, 4.0, 20.0}) {
      const double expected = std::pow(z, k) / factorial(k) / tail_series(z, k);
      EXPECT_LT(rel(floor_mass(z, k), expected), 1e-12);
    }
  }
}

TEST(Params, Overloads) {
  const TruncatedPoissonParams p{1.7, 3};
  EXPECT_EQ(tail_series(p), tail_series(1.7, 3));
  EXPECT_EQ(tail_prob(p), tail_prob(1.7, 3));
  EXPECT_EQ(cond_mean(p), cond_mean(1.7, 3));
  EXPECT_EQ(cond_variance(p), cond_variance(1.7, 3));
}

}  // namespace
}  // namespace dicore
