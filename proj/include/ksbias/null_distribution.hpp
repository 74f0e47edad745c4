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

// Exact null distribution of the two-sample KS statistic.
//
// Under H every one of the C(n+m, n) interleavings of the pooled sample is
// equally likely. An interleaving is a monotone lattice path from (0,0) to
// (n,m) where a step in i consumes an x and a step in j consumes a y, and
// D_{n,m} * n * m is the largest |i*m - j*n| visited by the path. All
// counting is done in arbitrary-precision integers.

#ifndef KSBIAS_NULL_DISTRIBUTION_HPP_
#define KSBIAS_NULL_DISTRIBUTION_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ksbias/errors.hpp"
#include "ksbias/exact.hpp"
#include "ksbias/statistic.hpp"

namespace ksbias {

inline constexpr int kMaxExactSampleSize = 500;

inline void require_exact_sizes(int n, int m) {
  require(n >= 1 && m >= 1 && n <= kMaxExactSampleSize && m <= kMaxExactSampleSize,
          "sample sizes must be in [1, " + std::to_string(kMaxExactSampleSize) + "], got n=" +
              std::to_string(n) + ", m=" + std::to_string(m));
}

inline std::int64_t lattice_deviation(int n, int m, int i, int j) {
  const std::int64_t d = static_cast<std::int64_t>(i) * m - static_cast<std::int64_t>(j) * n;
  return d < 0 ? -d : d;
}

// Number of paths that stay strictly inside |i*m - j*n| < level.
inline BigInt count_paths_below(int n, int m, std::int64_t level) {
  require_exact_sizes(n, m);
  if (level <= 0) return 0;
  std::vector<BigInt> row(static_cast<std::size_t>(m) + 1, BigInt(0));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      if (lattice_deviation(n, m, i, j) >= level) {
        row[j] = 0;
      } else if (i == 0 && j == 0) {
        row[j] = 1;
      } else if (j > 0) {
        row[j] += row[j - 1];
      }
    }
  }
  return row[m];
}

// P(D_{n,m} >= level / (n*m)) under H.
inline Rational tail_probability(int n, int m, std::int64_t level) {
  const BigInt total = binomial(static_cast<unsigned>(n + m), static_cast<unsigned>(n));
  return Rational(total - count_paths_below(n, m, level), total);
}

// Every value |i*m - j*n| on the grid, ascending and distinct. The statistic's
// support is a subset of these.
inline std::vector<std::int64_t> candidate_levels(int n, int m) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j) out.push_back(lattice_deviation(n, m, i, j));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class NullDistribution {
 public:
  // Single pass over the grid. Each cell keeps the number of partial paths
  // reaching it grouped by the largest deviation seen so far.
  static NullDistribution compute(int n, int m) {
    require_exact_sizes(n, m);
    struct Entry {
      std::int64_t level;
      BigInt count;
    };
    using Cell = std::vector<Entry>;

    auto merge_into = [](const Cell& a, const Cell& b, std::int64_t floor) {
      Cell out;
      out.reserve(a.size() + b.size());
      BigInt clamped = 0;
      bool have_clamped = false;
      std::size_t ia = 0;
      std::size_t ib = 0;
      auto push = [&](std::int64_t level, const BigInt& count) {
        if (level <= floor) {
          clamped += count;
          have_clamped = true;
          return;
        }
        if (have_clamped) {
          out.push_back({floor, clamped});
          have_clamped = false;
          clamped = 0;
        }
        if (!out.empty() && out.back().level == level) {
          out.back().count += count;
        } else {
          out.push_back({level, count});
        }
      };
      while (ia < a.size() || ib < b.size()) {
        if (ib == b.size() || (ia < a.size() && a[ia].level <= b[ib].level)) {
          push(a[ia].level, a[ia].count);
          ++ia;
        } else {
          push(b[ib].level, b[ib].count);
          ++ib;
        }
      }
      if (have_clamped) out.push_back({floor, clamped});
      return out;
    };

    const Cell empty;
    std::vector<Cell> row(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= m; ++j) {
        const std::int64_t dev = lattice_deviation(n, m, i, j);
        if (i == 0 && j == 0) {
          row[0] = Cell{{0, BigInt(1)}};
          continue;
        }
        const Cell& from_x = i > 0 ? row[j] : empty;
        const Cell& from_y = j > 0 ? row[j - 1] : empty;
        row[j] = merge_into(from_x, from_y, dev);
      }
    }

    NullDistribution dist;
    dist.n_ = n;
    dist.m_ = m;
    dist.total_ = binomial(static_cast<unsigned>(n + m), static_cast<unsigned>(n));
    for (auto& entry : row[m]) {
      dist.levels_.push_back(entry.level);
      dist.counts_.push_back(std::move(entry.count));
    }
    return dist;
  }

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  std::int64_t denominator() const noexcept {
    return static_cast<std::int64_t>(n_) * static_cast<std::int64_t>(m_);
  }
  const BigInt& total() const noexcept { return total_; }

  // Achievable numerators, ascending; the support is levels()[k] / (n*m).
  const std::vector<std::int64_t>& levels() const noexcept { return levels_; }
  const std::vector<BigInt>& counts() const noexcept { return counts_; }
  std::size_t size() const noexcept { return levels_.size(); }

  Rational support_point(std::size_t k) const { return Rational(levels_.at(k), denominator()); }
  Rational probability(std::size_t k) const { return Rational(counts_.at(k), total_); }

  // P(D >= level / (n*m)).
  Rational tail(std::int64_t level) const {
    BigInt acc = 0;
    for (std::size_t k = levels_.size(); k-- > 0 && levels_[k] >= level;) acc += counts_[k];
    return Rational(acc, total_);
  }

  // P(D <= level / (n*m)).
  Rational cdf(std::int64_t level) const {
    BigInt acc = 0;
    for (std::size_t k = 0; k < levels_.size() && levels_[k] <= level; ++k) acc += counts_[k];
    return Rational(acc, total_);
  }

  friend bool operator==(const NullDistribution& a, const NullDistribution& b) {
    return a.levels_ == b.levels_ && a.counts_ == b.counts_ && a.total_ == b.total_;
  }

 private:
  NullDistribution() = default;

  int n_ = 0;
  int m_ = 0;
  BigInt total_ = 0;
  std::vector<std::int64_t> levels_;
  std::vector<BigInt> counts_;
};

inline NullDistribution null_distribution(int n, int m) { return NullDistribution::compute(n, m); }

// Smallest numerator L with L / (n*m) >= d.
inline std::int64_t level_at_or_above(int n, int m, const Rational& d) {
  const Rational scaled = d * (static_cast<std::int64_t>(n) * static_cast<std::int64_t>(m));
  BigInt q = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  if (Rational(q) < scaled) ++q;
  return q.convert_to<std::int64_t>();
}

// Exact P(D_{n,m} >= d) under H for any rational d in [0, 1].
inline Rational p_value(int n, int m, const Rational& d) {
  require(d >= 0 && d <= 1, "statistic value must lie in [0, 1], got " + to_fraction_string(d));
  return tail_probability(n, m, level_at_or_above(n, m, d));
}

inline Rational p_value(int n, int m, const KsStatistic& d) {
  require(d.denominator == static_cast<std::int64_t>(n) * m,
          "statistic denominator does not match n*m");
  return p_value(n, m, d.value());
}

// Discrete rejection rule "reject iff D * n * m >= numerator".
struct RejectionThreshold {
  int n = 0;
  int m = 0;
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  Rational attained_level = 0;

  // Signalled by a numerator above n*m: no achievable statistic reaches it.
  bool never_rejects() const noexcept { return numerator > denominator; }
  Rational value() const { return Rational(numerator, denominator); }
  bool rejects(std::int64_t statistic_numerator) const noexcept {
    return statistic_numerator >= numerator;
  }
};

// Smallest achievable statistic value whose exact tail probability is <= alpha,
// with that tail probability. The nominal alpha is compared exactly, as the
// binary value of the double.
inline RejectionThreshold threshold_for_level(int n, int m, double alpha) {
  require(alpha > 0 && alpha < 1, "alpha must lie in (0, 1)");
  require_exact_sizes(n, m);
  const Rational target = rational_from_double(alpha);
  const std::int64_t nm = static_cast<std::int64_t>(n) * m;
  const BigInt total = binomial(static_cast<unsigned>(n + m), static_cast<unsigned>(n));
  auto tail = [&](std::int64_t level) {
    return Rational(total - count_paths_below(n, m, level), total);
  };

  const Rational top = tail(nm);
  if (top > target) return {n, m, nm + 1, nm, Rational(0)};

  const std::vector<std::int64_t> cands = candidate_levels(n, m);
  // First candidate whose tail is <= target; tails are nonincreasing.
  std::size_t lo = 0;
  std::size_t hi = cands.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (tail(cands[mid]) <= target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const Rational attained = tail(cands[lo]);
  // The achievable value is the last candidate sharing this tail.
  std::size_t a = lo;
  std::size_t b = cands.size() - 1;
  while (a < b) {
    const std::size_t mid = a + (b - a + 1) / 2;
    if (tail(cands[mid]) == attained) {
      a = mid;
    } else {
      b = mid - 1;
    }
  }
  return {n, m, cands[a], nm, attained};
}

// Numerator of the rank-r rejection threshold: 1, max(1-1/n, 1-1/m), and, on
// n > 2m or m > 2n, the third largest value 1 - 2/max(n, m).
inline std::int64_t rank_threshold_numerator(int n, int m, int rank) {
  require(n >= 1 && m >= 1, "sample sizes must be positive");
  const std::int64_t nm = static_cast<std::int64_t>(n) * m;
  const std::int64_t lo = std::min(n, m);
  switch (rank) {
    case 1:
      return nm;
    case 2:
      return nm - lo;
    case 3:
      require(n > 2 * m || m > 2 * n, "rank 3 requires n > 2m or m > 2n, got n=" +
                                          std::to_string(n) + ", m=" + std::to_string(m));
      return nm - 2 * lo;
    default:
      throw DomainError("rank must be 1, 2 or 3, got " + std::to_string(rank));
  }
}

}  // namespace ksbias

#endif  // KSBIAS_NULL_DISTRIBUTION_HPP_
