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

// Alternative distributions for the second sample.
//
// The odds-power family G_theta(x) = r^theta / (1 + r^theta), r = x / (1 - x),
// contains the uniform law at theta = 1 and supplies the most biased
// alternatives at the three smallest levels. Its theta -> 0 and theta -> oo
// limits are the discrete laws P(y=0) = P(y=1) = 1/2 and P(y=1/2) = 1.

#ifndef KSBIAS_ALTERNATIVE_HPP_
#define KSBIAS_ALTERNATIVE_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ksbias/errors.hpp"
#include "ksbias/random.hpp"
#include "ksbias/statistic.hpp"

namespace ksbias {

// theta = numerator / denominator, kept exact so theta == 1 and the
// degenerate zero cases are detected without rounding.
struct Exponent {
  std::int64_t numerator = 1;
  std::int64_t denominator = 1;

  static Exponent reduced(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? Exponent{num, den} : Exponent{num / g, den / g};
  }
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  bool is_one() const { return numerator == denominator && numerator != 0; }
  std::string str() const {
    return denominator == 1 ? std::to_string(numerator)
                            : std::to_string(numerator) + "/" + std::to_string(denominator);
  }
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

namespace detail {

// log(1 + e^z) without overflow.
inline double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

inline double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

inline double logit(double x) { return std::log(x) - std::log1p(-x); }

}  // namespace detail

class OddsPowerCdf {
 public:
  explicit OddsPowerCdf(double theta) : theta_(theta) {
    require(std::isfinite(theta) && theta > 0, "theta must be positive and finite");
    uniform_ = theta == 1.0;
  }

  explicit OddsPowerCdf(Exponent exact) : exact_(Exponent::reduced(exact.numerator, exact.denominator)) {
    require(exact.numerator > 0 && exact.denominator > 0,
            "exact theta needs a positive numerator and denominator");
    theta_ = exact_->value();
    uniform_ = exact_->is_one();
  }

  static OddsPowerCdf uniform() { return OddsPowerCdf(Exponent{1, 1}); }

  double theta() const noexcept { return theta_; }
  const std::optional<Exponent>& exact() const noexcept { return exact_; }
  bool is_uniform() const noexcept { return uniform_; }

  double cdf(double x) const {
    require(x >= 0 && x <= 1, "cdf argument must lie in [0, 1]");
    if (x == 0 || x == 1 || uniform_) return x;
    return detail::logistic(theta_ * detail::logit(x));
  }

  double inverse_cdf(double u) const {
    require(u >= 0 && u <= 1, "inverse_cdf argument must lie in [0, 1]");
    if (u == 0 || u == 1 || uniform_) return u;
    return detail::logistic(detail::logit(u) / theta_);
  }

  // (log G(x), log(1 - G(x))) for x in (0, 1).
  std::pair<double, double> log_cdf_pair(double x) const {
    const double z = theta_ * detail::logit(x);
    return {-detail::softplus(-z), -detail::softplus(z)};
  }

  std::string str() const {
    if (uniform_) return "uniform";
    return "odds-power(theta=" + (exact_ ? exact_->str() : std::to_string(theta_)) + ")";
  }

 private:
  double theta_ = 1.0;
  std::optional<Exponent> exact_;
  bool uniform_ = false;
};

enum class DegenerateKind {
  TwoPointZeroOne,  // P(y=0) = P(y=1) = 1/2, the theta -> 0 limit
  PointMassHalf,    // P(y=1/2) = 1, the theta -> oo limit
};

struct DegenerateAlternative {
  DegenerateKind kind;

  double cdf(double x) const {
    require(std::isfinite(x), "cdf argument must be finite");
    if (kind == DegenerateKind::TwoPointZeroOne) return x < 0 ? 0.0 : (x < 1 ? 0.5 : 1.0);
    return x < 0.5 ? 0.0 : 1.0;
  }

  std::string str() const {
    return kind == DegenerateKind::TwoPointZeroOne ? "two-point-0-1" : "point-mass-half";
  }
  friend bool operator==(const DegenerateAlternative&, const DegenerateAlternative&) = default;
};

using Alternative = std::variant<OddsPowerCdf, DegenerateAlternative>;

inline double cdf(const Alternative& g, double x) {
  return std::visit([x](const auto& alt) { return alt.cdf(x); }, g);
}

inline std::string describe(const Alternative& g) {
  return std::visit([](const auto& alt) { return alt.str(); }, g);
}

inline bool is_uniform(const Alternative& g) {
  const auto* odds = std::get_if<OddsPowerCdf>(&g);
  return odds != nullptr && odds->is_uniform();
}

// Odds-power exponent of the alternative that minimises the rejection
// probability at the rank-r level:
//   rank 1: (n-1)/(m-1)
//   rank 2: (n-3)/(m-1) if n > m, (n-1)/(m-3) if n < m
//   rank 3: (n-5)/(m-1) if n > 2m, (n-1)/(m-5) if m > 2n
// A zero numerator gives the two-point law, a zero denominator the point mass.
inline Alternative most_biased_exponent(int n, int m, int rank) {
  require(n >= 2 && m >= 2, "most biased exponent requires n, m >= 2");
  std::int64_t num = 0;
  std::int64_t den = 0;
  switch (rank) {
    case 1:
      num = n - 1;
      den = m - 1;
      break;
    case 2:
      require(n != m, "rank 2 exponent requires n != m");
      if (n > m) {
        num = n - 3;
        den = m - 1;
      } else {
        num = n - 1;
        den = m - 3;
      }
      break;
    case 3:
      if (n > 2 * m) {
        num = n - 5;
        den = m - 1;
      } else if (m > 2 * n) {
        num = n - 1;
        den = m - 5;
      } else {
        throw DomainError("rank 3 requires n > 2m or m > 2n, got n=" + std::to_string(n) +
                          ", m=" + std::to_string(m));
      }
      break;
    default:
      throw DomainError("rank must be 1, 2 or 3, got " + std::to_string(rank));
  }
  if (num == 0) return DegenerateAlternative{DegenerateKind::TwoPointZeroOne};
  if (den == 0) return DegenerateAlternative{DegenerateKind::PointMassHalf};
  return OddsPowerCdf(Exponent{num, den});
}

// Inverse-transform draws from g using the given stream.
inline void draw_into(const Alternative& g, SplitMix64& rng, std::vector<double>& out) {
  if (const auto* odds = std::get_if<OddsPowerCdf>(&g)) {
    if (odds->is_uniform()) {
      for (double& v : out) v = rng.uniform_open();
    } else {
      for (double& v : out) v = odds->inverse_cdf(rng.uniform_open());
    }
    return;
  }
  const auto kind = std::get<DegenerateAlternative>(g).kind;
  for (double& v : out) {
    const std::uint64_t bits = rng();
    v = kind == DegenerateKind::TwoPointZeroOne ? static_cast<double>(bits >> 63) : 0.5;
  }
}

inline constexpr std::uint64_t kSampleStreamTag = 0x73616d706c65ULL;

// `count` draws from g on a substream fixed by (seed, count).
inline Sample sample(const Alternative& g, std::size_t count, std::uint64_t seed) {
  require(count >= 1, "sample count must be positive");
  SplitMix64 rng(derive_stream(seed, {kSampleStreamTag, count}));
  std::vector<double> values(count);
  draw_into(g, rng, values);
  return Sample(std::move(values));
}

}  // namespace ksbias

#endif  // KSBIAS_ALTERNATIVE_HPP_
