// Copyright 2026 The ksbias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "ksbias/bias_analysis.hpp"
#include "ksbias/null_distribution.hpp"
#include "oracles.hpp"

namespace ksbias {
namespace {

// Rejection probability at the rank-r threshold under a degenerate law, found
// by walking each possible arrangement. Two-point: k of the y's sit at 0, the
// rest at 1, all x's in between. Point mass: k of the x's lie below the y's at
// 1/2. Ties occur only within y, and |i*m - j*n| is convex along a run of
// steps, so walking every step gives the same maximum as jumping per block.
Rational degenerate_oracle(int n, int m, int rank, DegenerateKind kind) {
  const std::int64_t threshold = rank_threshold_numerator(n, m, rank);
  const bool two_point = kind == DegenerateKind::TwoPointZeroOne;
  const int count = two_point ? m : n;
  Rational p = 0;
  for (int k = 0; k <= count; ++k) {
    std::vector<int> order;  // 1 = x, 0 = y
    if (two_point) {
      order.insert(order.end(), k, 0);
      order.insert(order.end(), n, 1);
      order.insert(order.end(), m - k, 0);
    } else {
      order.insert(order.end(), k, 1);
      order.insert(order.end(), m, 0);
      order.insert(order.end(), n - k, 1);
    }
    std::int64_t i = 0, j = 0, worst = 0;
    for (int v : order) {
      (v ? i : j) += 1;
      worst = std::max(worst, std::abs(i * m - j * n));
    }
    if (worst >= threshold) p += Rational(binomial(count, k), BigInt(1) << count);
  }
  return p;
}

TEST(Integrands, UniformValuesEqualExactTails) {
  for (int n = 2; n <= 14; ++n) {
    for (int m = 2; m <= 14; ++m) {
      EXPECT_EQ(uniform_value(rank1_integrand(n, m, Side::TwoSided)), tail_probability(n, m, n * m));
      EXPECT_EQ(uniform_value(rank1_integrand(n, m, Side::XAboveY)), Rational(1, binomial(n + m, n)));
      EXPECT_EQ(uniform_value(rank1_integrand(n, m, Side::YAboveX)), Rational(1, binomial(n + m, n)));
      if (n != m)
        EXPECT_EQ(uniform_value(rank2_integrand(n, m)), tail_probability(n, m, rank_threshold_numerator(n, m, 2)))
            << n << "," << m;
      if (n > 2 * m || m > 2 * n)
        EXPECT_EQ(uniform_value(rank3_integrand(n, m)), tail_probability(n, m, rank_threshold_numerator(n, m, 3)))
            << n << "," << m;
    }
  }
}

TEST(Integrands, DomainChecks) {
  EXPECT_THROW(rank2_integrand(6, 6), DomainError);
  EXPECT_THROW(rank3_integrand(6, 4), DomainError);
  EXPECT_THROW(rank_integrand(6, 4, 0), DomainError);
}

TEST(RejectionProb, UniformQuadratureMatchesClosedForm) {
  for (auto [n, m] : {std::pair{10, 11}, {50, 20}, {3, 7}, {7, 5}, {20, 6}, {4, 13}}) {
    for (int rank = 1; rank <= 3; ++rank) {
      if (rank == 3 && !(n > 2 * m || m > 2 * n)) continue;
      const auto p = rejection_prob(n, m, rank, OddsPowerCdf::uniform());
      const double expected = to_double(uniform_value(rank_integrand(n, m, rank)));
      EXPECT_LT(oracle::relative_gap(p.value, expected), 1e-10) << n << "," << m << " r" << rank;
      EXPECT_FALSE(p.exact);
    }
  }
}

// Independent Simpson evaluation of P(all y below all x) + P(all x below all y):
//   int n (1-x)^(n-1) G^m + n x^(n-1) (1-G)^m dx.
TEST(RejectionProb, RankOneAgainstSimpson) {
  for (auto [n, m, theta] : {std::tuple{10, 11, 0.9}, {3, 7, 2.0 / 6.0}, {5, 4, 1.7}}) {
    const long double ref = oracle::simpson(
        [n = n, m = m, theta = theta](long double x) -> long double {
          if (x <= 0 || x >= 1) return 0;
          const long double odds = std::pow(x / (1 - x), static_cast<long double>(theta));
          const long double g = odds / (1 + odds);
          return n * (std::pow(1 - x, n - 1) * std::pow(g, m) + std::pow(x, n - 1) * std::pow(1 - g, m));
        },
        0, 1, 20000);
    const auto p = rejection_prob(n, m, 1, OddsPowerCdf(theta));
    EXPECT_LT(oracle::relative_gap(p.value, static_cast<double>(ref)), 1e-9) << n << "," << m;
    EXPECT_LT(p.quadrature_error, 1e-12 * p.value + 1e-300);
  }
}

TEST(RejectionProb, DegenerateLawsMatchArrangementWalk) {
  for (auto [n, m] : {std::pair{3, 2}, {2, 3}, {5, 3}, {3, 5}, {4, 9}}) {
    for (auto kind : {DegenerateKind::TwoPointZeroOne, DegenerateKind::PointMassHalf}) {
      for (int rank = 1; rank <= 2; ++rank) {
        const auto p = rejection_prob(n, m, rank, DegenerateAlternative{kind});
        ASSERT_TRUE(p.exact);
        EXPECT_EQ(*p.exact, degenerate_oracle(n, m, rank, kind)) << n << "," << m << " rank " << rank;
      }
    }
  }
}

TEST(RejectionProb, OneSidedPartsAddUp) {
  const OddsPowerCdf g(0.7);
  const double a = rejection_prob(8, 5, 1, g, Side::XAboveY).value;
  const double b = rejection_prob(8, 5, 1, g, Side::YAboveX).value;
  EXPECT_NEAR(a + b, rejection_prob(8, 5, 1, g).value, 1e-15);
}

TEST(RejectionProb, TinyLevelsKeepRelativeAccuracy) {
  const auto p = rejection_prob(50, 20, 1, most_biased_exponent(50, 20, 1));
  EXPECT_GT(p.value, 0);
  // The tolerance is relative to alpha1 (about 1e-17), three orders above the value.
  EXPECT_LT(p.quadrature_error, 1e-8 * p.value);
}

TEST(Stationarity, MostBiasedCurveSolvesFirstOrderCondition) {
  for (auto [n, m, rank] : {std::tuple{10, 11, 1}, {50, 20, 1}, {12, 5, 2}, {5, 12, 2}, {20, 6, 3}, {4, 19, 3}}) {
    const Alternative g = most_biased_exponent(n, m, rank);
    for (double x : {0.01, 0.2, 0.5, 0.8, 0.97})
      EXPECT_NEAR(stationarity_residual(n, m, rank, x, cdf(g, x)), 0.0, 1e-10) << n << "," << m << "," << rank;
  }
}

TEST(Scan, MinimumNearMostBiasedExponent) {
  const auto grid = linear_grid(0.5, 2.0, 61);
  const auto scan = exponent_scan(10, 11, 1, grid);
  EXPECT_NEAR(scan[scan_argmin(scan)].theta, 0.9, 0.0125 + 1e-12);
}

TEST(Scan, LinearGrid) {
  const auto grid = linear_grid(0.5, 2.0, 41);
  ASSERT_EQ(grid.size(), 41u);
  EXPECT_EQ(grid.front(), 0.5);
  EXPECT_EQ(grid.back(), 2.0);
  EXPECT_DOUBLE_EQ(grid[13], 0.9875);
}

TEST(Verdict, Classifications) {
  EXPECT_EQ(bias_verdict(10, 11, 1, most_biased_exponent(10, 11, 1)).verdict, Verdict::Biased);
  EXPECT_EQ(bias_verdict(7, 5, 2, OddsPowerCdf::uniform()).verdict, Verdict::UnbiasedBoundary);
  EXPECT_EQ(bias_verdict(10, 11, 1, most_biased_exponent(10, 11, 2)).verdict, Verdict::NotBiasedAgainstThisG);
  EXPECT_EQ(bias_verdict(3, 2, 2, most_biased_exponent(3, 2, 2)).verdict, Verdict::Biased);
  EXPECT_EQ(bias_verdict(2, 3, 2, most_biased_exponent(2, 3, 2)).verdict, Verdict::Biased);
}

}  // namespace
}  // namespace ksbias
