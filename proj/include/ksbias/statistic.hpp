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

// Two-sample Kolmogorov-Smirnov statistics, computed exactly as integers over
// n*m. With i = #{x_k <= t} and j = #{y_k <= t}, the ECDF difference at t is
// (i*m - j*n) / (n*m), so every statistic here is an integer numerator over the
// fixed denominator n*m.

#ifndef KSBIAS_STATISTIC_HPP_
#define KSBIAS_STATISTIC_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ksbias/errors.hpp"
#include "ksbias/exact.hpp"

namespace ksbias {

// One group of observations, kept sorted ascending.
class Sample {
 public:
  explicit Sample(std::vector<double> values) : values_(std::move(values)) {
    require(!values_.empty(), "sample must contain at least one observation");
    for (double v : values_) require(std::isfinite(v), "sample values must be finite");
    std::sort(values_.begin(), values_.end());
  }

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

struct KsStatistic {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;  // n * m

  Rational value() const { return Rational(numerator, denominator); }
  double to_double() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  friend bool operator==(const KsStatistic&, const KsStatistic&) = default;
};

// Which sample the one-sided statistic expects to lie above the other.
//   XAboveY: sup_t (G_m(t) - F_n(t)); equals 1 exactly when max(y) < min(x).
//   YAboveX: sup_t (F_n(t) - G_m(t)); equals 1 exactly when max(x) < min(y).
// The signed supremum is taken with the standard "reject for large values"
// reading; the extreme value 1 corresponds to complete separation.
enum class Direction { XAboveY, YAboveX };

inline std::string to_string(Direction d) {
  return d == Direction::XAboveY ? "x-above-y" : "y-above-x";
}

// Largest signed ECDF gaps in units of 1/(n*m), both clipped below at 0.
struct SignedDeviations {
  std::int64_t x_above_y = 0;  // max (j*n - i*m)
  std::int64_t y_above_x = 0;  // max (i*m - j*n)
};

namespace detail {

// Walks the pooled jump points of two ascending ranges. Ties are consumed as a
// block so the ECDFs are evaluated right-continuously at each distinct value;
// the value just before a point equals the value at the previous point.
inline SignedDeviations signed_deviations(std::span<const double> x,
                                          std::span<const double> y) {
  const auto n = static_cast<std::int64_t>(x.size());
  const auto m = static_cast<std::int64_t>(y.size());
  SignedDeviations out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    double t;
    if (j == y.size() || (i < x.size() && x[i] <= y[j])) {
      t = x[i];
    } else {
      t = y[j];
    }
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    const std::int64_t gap = static_cast<std::int64_t>(i) * m - static_cast<std::int64_t>(j) * n;
    out.y_above_x = std::max(out.y_above_x, gap);
    out.x_above_y = std::max(out.x_above_y, -gap);
  }
  return out;
}

}  // namespace detail

inline SignedDeviations signed_deviations(const Sample& x, const Sample& y) {
  return detail::signed_deviations(x.values(), y.values());
}

inline KsStatistic two_sided_d(const Sample& x, const Sample& y) {
  const auto dev = signed_deviations(x, y);
  return {std::max(dev.x_above_y, dev.y_above_x),
          static_cast<std::int64_t>(x.size()) * static_cast<std::int64_t>(y.size())};
}

inline KsStatistic one_sided_d(const Sample& x, const Sample& y, Direction direction) {
  const auto dev = signed_deviations(x, y);
  return {direction == Direction::XAboveY ? dev.x_above_y : dev.y_above_x,
          static_cast<std::int64_t>(x.size()) * static_cast<std::int64_t>(y.size())};
}

// True iff some value occurs in both samples. Within-sample ties are ignored.
inline bool has_cross_sample_ties(const Sample& x, const Sample& y) {
  auto xs = x.values();
  auto ys = y.values();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xs.size() && j < ys.size()) {
    if (xs[i] == ys[j]) return true;
    if (xs[i] < ys[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

}  // namespace ksbias

#endif  // KSBIAS_STATISTIC_HPP_
