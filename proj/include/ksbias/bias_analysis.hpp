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

// Rejection probabilities of the two-sample KS test at its three smallest
// levels when x ~ U(0,1) and y ~ G, plus the bias verdicts built on them.
//
// Every probability here is an integral over (0,1) of a sum of terms
//   c * x^a (1-x)^b * G(x)^p (1-G(x))^q,
// where x is the location of an order statistic of the uniform sample and
// G^p (1-G)^q is the chance that the y sample falls on the required side.
// For rank r the event is D >= the r-th largest statistic value:
//
//   rank 1  max(y) < x_(1)  or  max(x) < y_(1)
//   rank 2  n > m: y_(m) < x_(2)  or  x_(n-1) < y_(1)
//           n < m: the rank 1 event, or exactly one y above x_(1), or exactly
//                  one y below x_(n)
//   rank 3  n > 2m: y_(m) < x_(3)  or  x_(n-2) < y_(1)
//           m > 2n: the rank 2 event, or exactly two y above x_(1), or
//                  exactly two y below x_(n)
//
// G uniform reduces each term to a Beta integral, the degenerate laws to
// (incomplete) Beta integrals at 1/2, and odds-power G is integrated
// numerically in log space.

#ifndef KSBIAS_BIAS_ANALYSIS_HPP_
#define KSBIAS_BIAS_ANALYSIS_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ksbias/alpha_ladder.hpp"
#include "ksbias/alternative.hpp"
#include "ksbias/errors.hpp"
#include "ksbias/exact.hpp"
#include "ksbias/quadrature.hpp"
#include "ksbias/statistic.hpp"

namespace ksbias {

enum class Side { TwoSided, XAboveY, YAboveX };

inline std::string to_string(Side side) {
  switch (side) {
    case Side::TwoSided:
      return "two-sided";
    case Side::XAboveY:
      return "x-above-y";
    case Side::YAboveX:
      return "y-above-x";
  }
  return "?";
}

struct IntegrandTerm {
  Rational coefficient;
  unsigned x_power = 0;
  unsigned one_minus_x_power = 0;
  unsigned g_power = 0;
  unsigned one_minus_g_power = 0;
};

using Integrand = std::vector<IntegrandTerm>;

namespace detail {

inline void append(Integrand& into, const Integrand& more) {
  into.insert(into.end(), more.begin(), more.end());
}

inline void require_rank_sizes(int n, int m) {
  require(n >= 1 && m >= 1 && n <= kMaxExactSampleSize && m <= kMaxExactSampleSize,
          "sample sizes must be in [1, " + std::to_string(kMaxExactSampleSize) + "]");
}

}  // namespace detail

// Separation events: XAboveY is max(y) < min(x), YAboveX is max(x) < min(y).
inline Integrand rank1_integrand(int n, int m, Side side) {
  detail::require_rank_sizes(n, m);
  const unsigned un = static_cast<unsigned>(n);
  const unsigned um = static_cast<unsigned>(m);
  Integrand out;
  if (side != Side::YAboveX) out.push_back({Rational(n), 0, un - 1, um, 0});
  if (side != Side::XAboveY) out.push_back({Rational(n), un - 1, 0, 0, um});
  return out;
}

inline Integrand rank2_integrand(int n, int m) {
  require(n >= 2 && m >= 2, "rank 2 requires n, m >= 2");
  require(n != m, "rank 2 integrals are defined for n != m only");
  detail::require_rank_sizes(n, m);
  const unsigned un = static_cast<unsigned>(n);
  const unsigned um = static_cast<unsigned>(m);
  if (n > m) {
    const Rational c(static_cast<std::int64_t>(n) * (n - 1));
    return {{c, un - 2, 1, 0, um}, {c, 1, un - 2, um, 0}};
  }
  const Rational c(static_cast<std::int64_t>(n) * m);
  Integrand out{{c, 0, un - 1, um - 1, 1}, {c, un - 1, 0, 1, um - 1}};
  detail::append(out, rank1_integrand(n, m, Side::TwoSided));
  return out;
}

inline Integrand rank3_integrand(int n, int m) {
  require(n >= 2 && m >= 2, "rank 3 requires n, m >= 2");
  require(n > 2 * m || m > 2 * n, "rank 3 requires n > 2m or m > 2n, got n=" + std::to_string(n) +
                                      ", m=" + std::to_string(m));
  detail::require_rank_sizes(n, m);
  const unsigned un = static_cast<unsigned>(n);
  const unsigned um = static_cast<unsigned>(m);
  if (n > 2 * m) {
    const Rational c(static_cast<std::int64_t>(n) * (n - 1) * (n - 2) / 2);
    return {{c, un - 3, 2, 0, um}, {c, 2, un - 3, um, 0}};
  }
  Integrand out = rank2_integrand(n, m);
  const Rational c(static_cast<std::int64_t>(n) * m * (m - 1) / 2);
  out.push_back({c, 0, un - 1, um - 2, 2});
  out.push_back({c, un - 1, 0, 2, um - 2});
  return out;
}

inline Integrand rank_integrand(int n, int m, int rank, Side side = Side::TwoSided) {
  require(rank == 1 || side == Side::TwoSided, "one-sided probabilities exist for rank 1 only");
  switch (rank) {
    case 1:
      return rank1_integrand(n, m, side);
    case 2:
      return rank2_integrand(n, m);
    case 3:
      return rank3_integrand(n, m);
    default:
      throw DomainError("rank must be 1, 2 or 3, got " + std::to_string(rank));
  }
}

// Value of the integral with G(x) = x.
inline Rational uniform_value(const Integrand& f) {
  Rational total = 0;
  for (const auto& t : f)
    total += t.coefficient * beta_integral(t.x_power + t.g_power, t.one_minus_x_power + t.one_minus_g_power);
  return total;
}

// Value of the integral for a degenerate G. The two-point law has G = 1/2 on
// (0,1); the point mass has G = 0 below 1/2 and G = 1 from 1/2 on.
inline Rational degenerate_value(const Integrand& f, DegenerateKind kind) {
  Rational total = 0;
  for (const auto& t : f) {
    if (kind == DegenerateKind::TwoPointZeroOne) {
      total += t.coefficient * beta_integral(t.x_power, t.one_minus_x_power) /
               (BigInt(1) << (t.g_power + t.one_minus_g_power));
    } else {
      if (t.g_power == 0) total += t.coefficient * lower_half_beta_integral(t.x_power, t.one_minus_x_power);
      if (t.one_minus_g_power == 0)
        total += t.coefficient * lower_half_beta_integral(t.one_minus_x_power, t.x_power);
    }
  }
  return total;
}

struct RejectionProbability {
  double value = 0;
  int rank = 1;
  Side side = Side::TwoSided;
  double quadrature_error = 0;
  // Set when the value came from a closed form rather than quadrature.
  std::optional<Rational> exact;
};

// Integrates f under an odds-power G. The integrand is divided by its value at
// G uniform so the absolute tolerance acts relative to the level, which keeps
// levels like 1e-17 resolvable.
inline RejectionProbability integrate_odds_power(const Integrand& f, const OddsPowerCdf& g,
                                                 double tol = 1e-12) {
  require(tol > 0, "tolerance must be positive");
  const double scale = to_double(uniform_value(f));
  std::vector<double> log_coefficients;
  for (const auto& t : f) log_coefficients.push_back(std::log(to_double(t.coefficient)) - std::log(scale));
  auto integrand = [&](double x) {
    const double lx = std::log(x);
    const double l1x = std::log1p(-x);
    const auto [lg, l1g] = g.log_cdf_pair(x);
    double sum = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const auto& t = f[k];
      double e = log_coefficients[k];
      if (t.x_power) e += t.x_power * lx;
      if (t.one_minus_x_power) e += t.one_minus_x_power * l1x;
      if (t.g_power) e += t.g_power * lg;
      if (t.one_minus_g_power) e += t.one_minus_g_power * l1g;
      sum += std::exp(e);
    }
    return sum;
  };
  QuadratureResult r;
  try {
    r = integrate(integrand, 0.0, 1.0, QuadratureOptions{tol, tol});
  } catch (const QuadratureError& e) {
    throw QuadratureError(e.what(), e.estimate() * scale, e.error() * scale);
  }
  RejectionProbability out;
  out.value = r.value * scale;
  out.quadrature_error = r.error * scale;
  return out;
}

inline RejectionProbability evaluate(const Integrand& f, const Alternative& g, double tol = 1e-12) {
  if (const auto* degenerate = std::get_if<DegenerateAlternative>(&g)) {
    RejectionProbability out;
    out.exact = degenerate_value(f, degenerate->kind);
    out.value = to_double(*out.exact);
    return out;
  }
  return integrate_odds_power(f, std::get<OddsPowerCdf>(g), tol);
}

inline RejectionProbability rejection_prob(int n, int m, int rank, const Alternative& g,
                                           Side side = Side::TwoSided, double tol = 1e-12) {
  RejectionProbability out = evaluate(rank_integrand(n, m, rank, side), g, tol);
  out.rank = rank;
  out.side = side;
  return out;
}

inline RejectionProbability rejection_prob_rank1(int n, int m, const Alternative& g, Side side,
                                                 double tol = 1e-12) {
  return rejection_prob(n, m, 1, g, side, tol);
}

inline RejectionProbability rejection_prob_rank2(int n, int m, const Alternative& g, double tol = 1e-12) {
  return rejection_prob(n, m, 2, g, Side::TwoSided, tol);
}

inline RejectionProbability rejection_prob_rank3(int n, int m, const Alternative& g, double tol = 1e-12) {
  return rejection_prob(n, m, 3, g, Side::TwoSided, tol);
}

// Exponents (y_power, x_power) of the first-order condition
// (y/(1-y))^y_power = (x/(1-x))^x_power for the rank-r integrand.
inline std::pair<int, int> stationarity_exponents(int n, int m, int rank) {
  require(n >= 2 && m >= 2, "stationarity requires n, m >= 2");
  switch (rank) {
    case 1:
      return {m - 1, n - 1};
    case 2:
      require(n != m, "rank 2 stationarity requires n != m");
      return n > m ? std::pair{m - 1, n - 3} : std::pair{m - 3, n - 1};
    case 3:
      if (n > 2 * m) return {m - 1, n - 5};
      if (m > 2 * n) return {m - 5, n - 1};
      throw DomainError("rank 3 requires n > 2m or m > 2n");
    default:
      throw DomainError("rank must be 1, 2 or 3, got " + std::to_string(rank));
  }
}

// y_power * logit(y) - x_power * logit(x); zero along the most biased G.
inline double stationarity_residual(int n, int m, int rank, double x, double y) {
  require(x > 0 && x < 1 && y > 0 && y < 1, "stationarity residual needs x, y in (0, 1)");
  const auto [y_power, x_power] = stationarity_exponents(n, m, rank);
  return y_power * detail::logit(y) - x_power * detail::logit(x);
}

struct ScanPoint {
  double theta;
  RejectionProbability probability;
};

inline std::vector<ScanPoint> exponent_scan(int n, int m, int rank, const std::vector<double>& theta_grid,
                                            double tol = 1e-12) {
  require(!theta_grid.empty(), "theta grid must be nonempty");
  const Integrand f = rank_integrand(n, m, rank);
  std::vector<ScanPoint> out;
  out.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    RejectionProbability p = evaluate(f, OddsPowerCdf(theta), tol);
    p.rank = rank;
    out.push_back({theta, p});
  }
  return out;
}

inline std::size_t scan_argmin(const std::vector<ScanPoint>& scan) {
  require(!scan.empty(), "empty scan");
  std::size_t best = 0;
  for (std::size_t k = 1; k < scan.size(); ++k)
    if (scan[k].probability.value < scan[best].probability.value) best = k;
  return best;
}

// `points` evenly spaced values from `from` to `to` inclusive.
inline std::vector<double> linear_grid(double from, double to, std::size_t points) {
  require(points >= 1, "grid needs at least one point");
  if (points == 1) return {from};
  std::vector<double> out(points);
  for (std::size_t k = 0; k < points; ++k)
    out[k] = from + (to - from) * static_cast<double>(k) / static_cast<double>(points - 1);
  return out;
}

enum class Verdict { Biased, UnbiasedBoundary, NotBiasedAgainstThisG };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Biased:
      return "biased";
    case Verdict::UnbiasedBoundary:
      return "unbiased-boundary";
    case Verdict::NotBiasedAgainstThisG:
      return "not-biased-against-this-G";
  }
  return "?";
}

struct BiasVerdict {
  int n = 0;
  int m = 0;
  int level_rank = 1;
  std::string alternative;
  Rational level;
  double power_at_level = 0;
  double quadrature_error = 0;
  double margin = 0;
  Verdict verdict = Verdict::UnbiasedBoundary;
};

// Classifies G against the rank-r level: biased when its rejection probability
// is below the level by more than 10x the quadrature error, boundary when the
// two agree to within that margin. Closed-form probabilities compare exactly.
inline BiasVerdict bias_verdict(int n, int m, int level_rank, const Alternative& g, double tol = 1e-12) {
  const AlphaLadder ladder = alpha_ladder(n, m);
  const Rational& level = ladder.level(level_rank);
  const RejectionProbability p = rejection_prob(n, m, level_rank, g, Side::TwoSided, tol);

  BiasVerdict out;
  out.n = n;
  out.m = m;
  out.level_rank = level_rank;
  out.alternative = describe(g);
  out.level = level;
  out.power_at_level = p.value;
  out.quadrature_error = p.quadrature_error;
  out.margin = 10 * p.quadrature_error;
  if (p.exact) {
    out.verdict = *p.exact < level   ? Verdict::Biased
                  : *p.exact == level ? Verdict::UnbiasedBoundary
                                      : Verdict::NotBiasedAgainstThisG;
    return out;
  }
  const double lvl = to_double(level);
  if (p.value < lvl - out.margin) {
    out.verdict = Verdict::Biased;
  } else if (p.value > lvl + out.margin) {
    out.verdict = Verdict::NotBiasedAgainstThisG;
  } else {
    out.verdict = Verdict::UnbiasedBoundary;
  }
  return out;
}

}  // namespace ksbias

#endif  // KSBIAS_BIAS_ANALYSIS_HPP_
