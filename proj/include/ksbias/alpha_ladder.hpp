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

#ifndef KSBIAS_ALPHA_LADDER_HPP_
#define KSBIAS_ALPHA_LADDER_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>

#include "ksbias/errors.hpp"
#include "ksbias/exact.hpp"
#include "ksbias/null_distribution.hpp"

namespace ksbias {

// The three smallest achievable significance levels of the two-sided test.
//
//   alpha1 = 2 n! m! / (n+m)!            reject only at D = 1
//   alpha2 = k alpha1, k = min(n+1, m+1)  reject at D >= max(1-1/n, 1-1/m)
//   alpha3 = k2 alpha1,                   reject at D >= 1 - 2/max(n, m),
//            k2 = min((m+2)(m+1), (n+2)(n+1)) / 2, only for n > 2m or m > 2n
//
// The alpha2 identity holds for n != m. For n == m the second level is taken
// from the exact null tail instead and alpha2_closed_form is false.
struct AlphaLadder {
  int n = 0;
  int m = 0;
  Rational alpha1;
  Rational alpha2;
  std::optional<Rational> alpha3;
  std::int64_t threshold1 = 0;  // numerators over n*m
  std::int64_t threshold2 = 0;
  std::optional<std::int64_t> threshold3;
  std::int64_t k = 0;
  std::optional<std::int64_t> k2;
  bool alpha2_closed_form = true;

  std::int64_t denominator() const { return static_cast<std::int64_t>(n) * m; }
  bool alpha3_defined() const { return alpha3.has_value(); }

  const Rational& level(int rank) const {
    switch (rank) {
      case 1:
        return alpha1;
      case 2:
        return alpha2;
      case 3:
        require(alpha3.has_value(), "alpha3 is only defined for n > 2m or m > 2n");
        return *alpha3;
      default:
        throw DomainError("rank must be 1, 2 or 3");
    }
  }
};

inline AlphaLadder alpha_ladder(int n, int m) {
  require(n >= 2 && m >= 2, "alpha ladder requires n, m >= 2");
  require_exact_sizes(n, m);
  AlphaLadder ladder;
  ladder.n = n;
  ladder.m = m;
  ladder.alpha1 = make_rational(2 * factorial(n) * factorial(m), factorial(n + m));
  ladder.threshold1 = rank_threshold_numerator(n, m, 1);
  ladder.threshold2 = rank_threshold_numerator(n, m, 2);
  ladder.k = std::min(n + 1, m + 1);
  if (n != m) {
    ladder.alpha2 = ladder.alpha1 * ladder.k;
  } else {
    ladder.alpha2 = tail_probability(n, m, ladder.threshold2);
    ladder.alpha2_closed_form = false;
  }
  if (n > 2 * m || m > 2 * n) {
    const std::int64_t lo = std::min(n, m);
    ladder.k2 = (lo + 2) * (lo + 1) / 2;
    ladder.alpha3 = ladder.alpha1 * *ladder.k2;
    ladder.threshold3 = rank_threshold_numerator(n, m, 3);
  }
  return ladder;
}

}  // namespace ksbias

#endif  // KSBIAS_ALPHA_LADDER_HPP_
