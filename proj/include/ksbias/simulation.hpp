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

// Monte Carlo power of the two-sample KS test with x ~ U(0,1), y ~ G.
//
// Replicate r of a run draws its x sample from the stream
// (seed, x-tag, n, m, r) and its y sample from (seed, y-tag, n, m, r), so
// results are bit-identical for any number of workers. The y stream does not
// depend on G: runs that differ only in G use common random numbers.

#ifndef KSBIAS_SIMULATION_HPP_
#define KSBIAS_SIMULATION_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "ksbias/alternative.hpp"
#include "ksbias/errors.hpp"
#include "ksbias/exact.hpp"
#include "ksbias/null_distribution.hpp"
#include "ksbias/random.hpp"
#include "ksbias/statistic.hpp"

namespace ksbias {

struct PowerEstimate {
  double power = 0;
  std::uint64_t rejections = 0;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  double standard_error = 0;
  Rational level_used;  // exact null rejection probability of the rule
  std::int64_t threshold_numerator = 0;
  std::int64_t denominator = 1;

  Rational threshold() const { return Rational(threshold_numerator, denominator); }
};

struct SimulationOptions {
  unsigned workers = 0;  // 0: one per hardware thread
};

namespace detail {

inline constexpr std::uint64_t kXStreamTag = 0x782d73747265616dULL;
inline constexpr std::uint64_t kYStreamTag = 0x792d73747265616dULL;

inline unsigned resolve_workers(unsigned requested, std::uint64_t replicates) {
  unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (replicates < w) w = static_cast<unsigned>(std::max<std::uint64_t>(1, replicates));
  return w;
}

inline std::uint64_t count_rejections_in(int n, int m, const Alternative& g, std::int64_t threshold,
                                         std::uint64_t first, std::uint64_t last, std::uint64_t seed) {
  const std::int64_t nm = static_cast<std::int64_t>(n) * m;
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> y(static_cast<std::size_t>(m));
  std::uint64_t rejections = 0;
  const auto un = static_cast<std::uint64_t>(n);
  const auto um = static_cast<std::uint64_t>(m);
  for (std::uint64_t r = first; r < last; ++r) {
    SplitMix64 xs(derive_stream(seed, {kXStreamTag, un, um, r}));
    SplitMix64 ys(derive_stream(seed, {kYStreamTag, un, um, r}));
    for (double& v : x) v = xs.uniform_open();
    draw_into(g, ys, y);
    if (threshold > nm) continue;
    if (threshold == nm) {
      // D = 1 exactly when the samples separate.
      const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
      const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
      if (*ymax < *xmin || *xmax < *ymin) ++rejections;
      continue;
    }
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const SignedDeviations dev = detail::signed_deviations(x, y);
    if (std::max(dev.x_above_y, dev.y_above_x) >= threshold) ++rejections;
  }
  return rejections;
}

inline std::uint64_t count_rejections(int n, int m, const Alternative& g, std::int64_t threshold,
                                      std::uint64_t replicates, std::uint64_t seed,
                                      const SimulationOptions& options) {
  const unsigned workers = resolve_workers(options.workers, replicates);
  if (workers == 1) return count_rejections_in(n, m, g, threshold, 0, replicates, seed);
  std::vector<std::uint64_t> counts(workers, 0);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t first = replicates * w / workers;
    const std::uint64_t last = replicates * (w + 1) / workers;
    threads.emplace_back([&, w, first, last] {
      counts[w] = count_rejections_in(n, m, g, threshold, first, last, seed);
    });
  }
  for (auto& t : threads) t.join();
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

inline PowerEstimate make_estimate(std::uint64_t rejections, std::uint64_t replicates, std::uint64_t seed,
                                   const Rational& level, std::int64_t threshold, std::int64_t nm) {
  PowerEstimate out;
  out.rejections = rejections;
  out.replicates = replicates;
  out.seed = seed;
  out.power = static_cast<double>(rejections) / static_cast<double>(replicates);
  out.standard_error = std::sqrt(out.power * (1 - out.power) / static_cast<double>(replicates));
  out.level_used = level;
  out.threshold_numerator = threshold;
  out.denominator = nm;
  return out;
}

}  // namespace detail

// Power at nominal level alpha: reject when D reaches the exact threshold
// returned by threshold_for_level, whose attained level is reported.
inline PowerEstimate estimate_power(int n, int m, const Alternative& g, double alpha,
                                    std::uint64_t replicates, std::uint64_t seed,
                                    const SimulationOptions& options = {}) {
  require(replicates >= 1, "replicates must be positive");
  const RejectionThreshold rule = threshold_for_level(n, m, alpha);
  const std::uint64_t rejections =
      detail::count_rejections(n, m, g, rule.numerator, replicates, seed, options);
  return detail::make_estimate(rejections, replicates, seed, rule.attained_level, rule.numerator,
                               rule.denominator);
}

// Simulated P(D >= rank-r threshold) under G, for checking the closed forms
// and quadratures of the bias analysis.
inline PowerEstimate verify_extreme_tail(int n, int m, const Alternative& g, int rank,
                                         std::uint64_t replicates, std::uint64_t seed,
                                         const SimulationOptions& options = {}) {
  require(replicates >= 1, "replicates must be positive");
  require_exact_sizes(n, m);
  const std::int64_t threshold = rank_threshold_numerator(n, m, rank);
  const std::uint64_t rejections = detail::count_rejections(n, m, g, threshold, replicates, seed, options);
  return detail::make_estimate(rejections, replicates, seed, tail_probability(n, m, threshold), threshold,
                               static_cast<std::int64_t>(n) * m);
}

// Agreement band for comparing an estimate with a reference probability p:
// the binomial standard error at p itself, or the empirical one if larger.
// The reference form keeps the band meaningful when no rejection is observed.
inline double agreement_standard_error(const PowerEstimate& estimate, double reference) {
  const double model = std::sqrt(reference * (1 - reference) / static_cast<double>(estimate.replicates));
  return std::max(model, estimate.standard_error);
}

inline constexpr std::array<int, 4> kTable1RowSizes = {10, 20, 50, 100};
inline constexpr std::array<int, 5> kTable1ColumnSizes = {11, 15, 21, 51, 101};

struct Table1Cell {
  int n = 0;
  int m = 0;
  Exponent theta;
  PowerEstimate null_power;
  PowerEstimate alternative_power;
  double difference = 0;
  double difference_se = 0;
};

struct Table1Result {
  std::vector<Table1Cell> cells;  // row-major over kTable1RowSizes x kTable1ColumnSizes
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  double alpha_nominal = 0.05;

  const Table1Cell& cell(int n, int m) const {
    for (const auto& c : cells)
      if (c.n == n && c.m == m) return c;
    throw DomainError("no table cell for n=" + std::to_string(n) + ", m=" + std::to_string(m));
  }
};

// Power under the rank-1 most biased alternative minus power under the null,
// both at the exact threshold for alpha = 0.05.
inline Table1Result reproduce_table1(std::uint64_t replicates, std::uint64_t seed,
                                     const SimulationOptions& options = {}) {
  require(replicates >= 1, "replicates must be positive");
  Table1Result out;
  out.replicates = replicates;
  out.seed = seed;
  for (int n : kTable1RowSizes) {
    for (int m : kTable1ColumnSizes) {
      Table1Cell cell;
      cell.n = n;
      cell.m = m;
      cell.theta = Exponent::reduced(n - 1, m - 1);
      const RejectionThreshold rule = threshold_for_level(n, m, out.alpha_nominal);
      const std::int64_t nm = static_cast<std::int64_t>(n) * m;
      const Alternative uniform = OddsPowerCdf::uniform();
      const Alternative biased = OddsPowerCdf(cell.theta);
      cell.null_power = detail::make_estimate(
          detail::count_rejections(n, m, uniform, rule.numerator, replicates, seed, options), replicates,
          seed, rule.attained_level, rule.numerator, nm);
      cell.alternative_power = detail::make_estimate(
          detail::count_rejections(n, m, biased, rule.numerator, replicates, seed, options), replicates,
          seed, rule.attained_level, rule.numerator, nm);
      cell.difference = cell.alternative_power.power - cell.null_power.power;
      cell.difference_se = std::hypot(cell.alternative_power.standard_error, cell.null_power.standard_error);
      out.cells.push_back(cell);
    }
  }
  return out;
}

}  // namespace ksbias

#endif  // KSBIAS_SIMULATION_HPP_
