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

// Self-check suite behind `ksbias verify`: exhaustive enumeration against the
// lattice-path counts, quadrature against exact tails, and simulation against
// both.

#ifndef KSBIAS_VERIFICATION_HPP_
#define KSBIAS_VERIFICATION_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ksbias/alpha_ladder.hpp"
#include "ksbias/bias_analysis.hpp"
#include "ksbias/null_distribution.hpp"
#include "ksbias/simulation.hpp"

namespace ksbias {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Counts of max |i*m - j*n| over all interleavings, by direct enumeration of
// the positions of the x observations. Exponential; meant for n + m <= 20.
inline std::map<std::int64_t, BigInt> enumerate_null_counts(int n, int m) {
  require(n >= 1 && m >= 1 && n + m <= 20, "enumeration needs n + m <= 20");
  const int total = n + m;
  std::map<std::int64_t, BigInt> counts;
  for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
    if (__builtin_popcount(mask) != n) continue;
    std::int64_t i = 0;
    std::int64_t j = 0;
    std::int64_t worst = 0;
    for (int pos = 0; pos < total; ++pos) {
      if (mask & (1u << pos)) {
        ++i;
      } else {
        ++j;
      }
      const std::int64_t dev = i * m - j * n;
      worst = std::max(worst, dev < 0 ? -dev : dev);
    }
    counts[worst] += 1;
  }
  return counts;
}

inline std::vector<CheckResult> run_verification(std::uint64_t replicates, std::uint64_t seed,
                                                 const SimulationOptions& options = {}) {
  std::vector<CheckResult> out;
  auto relative_gap = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };

  // Enumeration vs lattice-path DP.
  {
    bool ok = true;
    std::string detail = "all (n,m) with n+m <= 12";
    for (int n = 1; n <= 11 && ok; ++n) {
      for (int m = 1; n + m <= 12 && ok; ++m) {
        const auto counts = enumerate_null_counts(n, m);
        const NullDistribution dist = null_distribution(n, m);
        std::map<std::int64_t, BigInt> from_dp;
        for (std::size_t k = 0; k < dist.size(); ++k) from_dp[dist.levels()[k]] = dist.counts()[k];
        if (counts != from_dp) {
          ok = false;
          detail = "mismatch at n=" + std::to_string(n) + ", m=" + std::to_string(m);
        }
      }
    }
    out.push_back({"null-dp-vs-enumeration", ok, detail});
  }

  // Closed-form ladder vs exact tails.
  {
    bool ok = true;
    std::string detail = "2 <= n, m <= 12";
    for (int n = 2; n <= 12 && ok; ++n) {
      for (int m = 2; m <= 12 && ok; ++m) {
        const AlphaLadder ladder = alpha_ladder(n, m);
        ok = ok && tail_probability(n, m, ladder.threshold1) == ladder.alpha1;
        ok = ok && tail_probability(n, m, ladder.threshold2) == ladder.alpha2;
        if (ladder.alpha3) ok = ok && tail_probability(n, m, *ladder.threshold3) == *ladder.alpha3;
        if (!ok) detail = "mismatch at n=" + std::to_string(n) + ", m=" + std::to_string(m);
      }
    }
    out.push_back({"alpha-ladder-vs-exact-tail", ok, detail});
  }

  // Quadrature under G uniform vs exact tails.
  {
    bool ok = true;
    double worst = 0;
    for (int n = 2; n <= 12; ++n) {
      for (int m = 2; m <= 12; ++m) {
        for (int rank = 1; rank <= 3; ++rank) {
          if (rank == 2 && n == m) continue;
          if (rank == 3 && !(n > 2 * m || m > 2 * n)) continue;
          const double q = rejection_prob(n, m, rank, OddsPowerCdf::uniform()).value;
          const double exact = to_double(tail_probability(n, m, rank_threshold_numerator(n, m, rank)));
          worst = std::max(worst, relative_gap(q, exact));
        }
      }
    }
    ok = worst <= 1e-8;
    out.push_back({"quadrature-vs-exact-tail", ok, "max relative gap " + std::to_string(worst)});
  }

  // Simulation vs exact and quadrature values.
  {
    struct Case {
      int n, m, rank;
      Alternative g;
    };
    const std::vector<Case> cases = {
        {3, 3, 1, OddsPowerCdf::uniform()},
        {5, 3, 2, OddsPowerCdf::uniform()},
        {6, 2, 3, OddsPowerCdf::uniform()},
        {3, 7, 1, most_biased_exponent(3, 7, 1)},
        {10, 5, 2, most_biased_exponent(10, 5, 2)},
    };
    for (const auto& c : cases) {
      const double reference = rejection_prob(c.n, c.m, c.rank, c.g).value;
      const PowerEstimate est = verify_extreme_tail(c.n, c.m, c.g, c.rank, replicates, seed, options);
      const double se = agreement_standard_error(est, reference);
      const bool ok = std::abs(est.power - reference) <= 4 * se;
      out.push_back({"simulation-rank" + std::to_string(c.rank) + "-n" + std::to_string(c.n) + "-m" +
                         std::to_string(c.m) + "-" + describe(c.g),
                     ok,
                     "estimate " + std::to_string(est.power) + " vs " + std::to_string(reference) +
                         " (se " + std::to_string(se) + ")"});
    }
  }
  return out;
}

}  // namespace ksbias

#endif  // KSBIAS_VERIFICATION_HPP_
