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

#include <algorithm>
#include <cmath>

#include "ksbias/alternative.hpp"
#include "oracles.hpp"

namespace ksbias {
namespace {

TEST(OddsPowerCdf, MatchesHighPrecision) {
  for (double theta : {0.09, 0.5, 0.9, 49.0 / 19.0, 7.0}) {
    const OddsPowerCdf g(theta);
    for (double x : {1e-9, 1e-4, 0.01, 0.2, 0.5, 0.73, 0.99, 1 - 1e-7}) {
      const double expected = oracle::high_precision_cdf(x, theta);
      EXPECT_NEAR(g.cdf(x), expected, 4e-16 + 1e-14 * expected) << theta << " " << x;
    }
  }
}

TEST(OddsPowerCdf, UniformIsIdentity) {
  const OddsPowerCdf g = OddsPowerCdf::uniform();
  EXPECT_TRUE(g.is_uniform());
  EXPECT_TRUE(OddsPowerCdf(Exponent{4, 4}).is_uniform());
  for (double x : {0.0, 0.1, 0.3333, 1.0}) EXPECT_EQ(g.cdf(x), x);
}

TEST(OddsPowerCdf, ExactExponentIsReduced) {
  const OddsPowerCdf g(Exponent{49, 19 * 7});
  ASSERT_TRUE(g.exact());
  EXPECT_EQ(g.exact()->numerator, 7);
  EXPECT_EQ(g.exact()->denominator, 19);
  EXPECT_DOUBLE_EQ(g.theta(), 7.0 / 19.0);
}

TEST(OddsPowerCdf, RejectsNonPositiveTheta) {
  EXPECT_THROW(OddsPowerCdf(0.0), DomainError);
  EXPECT_THROW(OddsPowerCdf(-1.0), DomainError);
  EXPECT_THROW(OddsPowerCdf(std::nan("")), DomainError);
  EXPECT_THROW(OddsPowerCdf(0.5).cdf(1.5), DomainError);
}

TEST(DegenerateAlternative, Cdfs) {
  const DegenerateAlternative two{DegenerateKind::TwoPointZeroOne};
  const DegenerateAlternative point{DegenerateKind::PointMassHalf};
  EXPECT_EQ(two.cdf(0.0), 0.5);
  EXPECT_EQ(two.cdf(0.7), 0.5);
  EXPECT_EQ(two.cdf(1.0), 1.0);
  EXPECT_EQ(point.cdf(0.49), 0.0);
  EXPECT_EQ(point.cdf(0.5), 1.0);
}

TEST(MostBiased, Exponents) {
  auto theta = [](int n, int m, int rank) { return std::get<OddsPowerCdf>(most_biased_exponent(n, m, rank)); };
  EXPECT_EQ(theta(10, 11, 1).exact()->str(), "9/10");
  EXPECT_EQ(theta(50, 20, 1).exact()->str(), "49/19");
  EXPECT_TRUE(theta(7, 5, 2).is_uniform());
  EXPECT_TRUE(theta(5, 7, 2).is_uniform());
  EXPECT_EQ(theta(10, 11, 2).exact()->str(), "9/8");
  EXPECT_EQ(theta(11, 10, 2).exact()->str(), "8/9");
  EXPECT_EQ(theta(20, 5, 3).exact()->str(), "15/4");
  EXPECT_EQ(theta(5, 20, 3).exact()->str(), "4/15");
  EXPECT_EQ(std::get<DegenerateAlternative>(most_biased_exponent(3, 2, 2)).kind, DegenerateKind::TwoPointZeroOne);
  EXPECT_EQ(std::get<DegenerateAlternative>(most_biased_exponent(2, 3, 2)).kind, DegenerateKind::PointMassHalf);
  EXPECT_THROW(most_biased_exponent(5, 5, 2), DomainError);
  EXPECT_THROW(most_biased_exponent(5, 4, 3), DomainError);
  EXPECT_THROW(most_biased_exponent(5, 4, 4), DomainError);
}

TEST(Sampling, DeterministicPerSeed) {
  const Alternative g = OddsPowerCdf(0.9);
  const Sample a = sample(g, 50, 7);
  const Sample b = sample(g, 50, 7);
  const Sample c = sample(g, 50, 8);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
}

// One-sample KS check of the inverse-transform sampler against the CDF.
TEST(Sampling, FollowsTheCdf) {
  for (double theta : {0.2, 1.0, 3.0}) {
    const Alternative g = OddsPowerCdf(theta);
    const std::size_t count = 40000;
    const Sample s = sample(g, count, 99);
    double worst = 0;
    for (std::size_t k = 0; k < count; ++k) {
      const double f = cdf(g, s.values()[k]);
      worst = std::max({worst, std::abs(f - static_cast<double>(k) / count), std::abs(f - (k + 1.0) / count)});
    }
    EXPECT_LT(worst, 1.63 / std::sqrt(static_cast<double>(count))) << theta;  // 1% critical value
  }
}

TEST(Sampling, DegenerateDraws) {
  const Sample two = sample(DegenerateAlternative{DegenerateKind::TwoPointZeroOne}, 1000, 3);
  const auto zeros = std::count(two.values().begin(), two.values().end(), 0.0);
  const auto ones = std::count(two.values().begin(), two.values().end(), 1.0);
  EXPECT_EQ(zeros + ones, 1000);
  EXPECT_NEAR(zeros, 500, 70);
  const Sample point = sample(DegenerateAlternative{DegenerateKind::PointMassHalf}, 10, 3);
  for (double v : point.values()) EXPECT_EQ(v, 0.5);
}

}  // namespace
}  // namespace ksbias
