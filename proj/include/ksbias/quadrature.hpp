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

// Globally adaptive Gauss-Kronrod (7/15) quadrature.
//
// Each panel is integrated with the 15-point Kronrod rule; the panel error is
// |K15 - G7|, floored at 50 eps times the integral of |f| so that smooth
// integrands never report an error below rounding. The panel with the largest
// error is bisected until the summed error meets the tolerance. Nodes are
// interior, so integrands may be singular-looking at the endpoints as long as
// they stay finite inside.

#ifndef KSBIAS_QUADRATURE_HPP_
#define KSBIAS_QUADRATURE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ksbias/errors.hpp"

namespace ksbias {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  int max_depth = 40;
  std::size_t max_panels = 200000;
};

struct QuadratureResult {
  double value = 0;
  double error = 0;
  std::size_t panels = 0;
};

namespace detail {

// Kronrod abscissae on [0, 1) of the reference interval; odd indices are the
// 7-point Gauss nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod_panel(F& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double absolute = std::abs(kronrod);
  for (int k = 0; k < 7; ++k) {
    const double dx = half * kKronrodNodes[k];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kKronrodWeights[k] * (f1 + f2);
    absolute += kKronrodWeights[k] * (std::abs(f1) + std::abs(f2));
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  absolute *= std::abs(half);
  const double rounding = 50 * std::numeric_limits<double>::epsilon() * absolute;
  return {a, b, kronrod, std::max(std::abs(kronrod - gauss), rounding), depth};
}

}  // namespace detail

template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& options = {}) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "integration bounds must be finite, a < b");
  require(options.abs_tol >= 0 && options.rel_tol >= 0 && options.abs_tol + options.rel_tol > 0,
          "quadrature tolerance must be positive");

  std::vector<detail::Panel> work;  // max-heap on error
  work.push_back(detail::kronrod_panel(f, a, b, 0));
  double value = work.front().value;
  double error = work.front().error;

  auto resum = [&] {
    // Fresh sums in position order keep the running totals from drifting.
    std::vector<const detail::Panel*> order;
    order.reserve(work.size());
    for (const auto& p : work) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const auto* p, const auto* q) { return p->a < q->a; });
    value = 0;
    error = 0;
    for (const auto* p : order) {
      value += p->value;
      error += p->error;
    }
  };

  auto target = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(value)); };
  std::size_t next_resum = 64;
  for (;;) {
    while (error > target()) {
      const detail::Panel worst = work.front();
      if (worst.depth >= options.max_depth || work.size() >= options.max_panels) {
        resum();
        throw QuadratureError("quadrature did not converge: subdivision limit reached", value,
                              error);
      }
      std::pop_heap(work.begin(), work.end());
      work.pop_back();
      const double mid = 0.5 * (worst.a + worst.b);
      const detail::Panel left = detail::kronrod_panel(f, worst.a, mid, worst.depth + 1);
      const detail::Panel right = detail::kronrod_panel(f, mid, worst.b, worst.depth + 1);
      value += left.value + right.value - worst.value;
      error += left.error + right.error - worst.error;
      work.push_back(left);
      std::push_heap(work.begin(), work.end());
      work.push_back(right);
      std::push_heap(work.begin(), work.end());
      if (work.size() >= next_resum) {
        resum();
        next_resum *= 2;
      }
    }
    // Running totals can drift below the true sum; confirm on fresh sums.
    resum();
    if (error <= target()) break;
  }
  return {value, error, work.size()};
}

// Integral over (0, 1) with an absolute tolerance.
template <class F>
QuadratureResult integrate(F&& f, double tol = 1e-12) {
  return integrate(std::forward<F>(f), 0.0, 1.0, QuadratureOptions{tol});
}

}  // namespace ksbias

#endif  // KSBIAS_QUADRATURE_HPP_
