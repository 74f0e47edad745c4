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

// Counter-based seeding. A stream is identified by a master seed plus a path of
// integers (purpose tag, sizes, replicate index) hashed through the SplitMix64
// finalizer, so the numbers a replicate sees do not depend on which worker
// runs it or in what order.

#ifndef KSBIAS_RANDOM_HPP_
#define KSBIAS_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace ksbias {

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
  z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t derive_stream(std::uint64_t seed,
                                             std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(seed + UINT64_C(0x9E3779B97F4A7C15));
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p + UINT64_C(0x632BE59BD9B4E019)));
  return h;
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += UINT64_C(0x9E3779B97F4A7C15);
    return mix64(state_);
  }

  // Uniform on the open interval (0, 1): (k + 1/2) / 2^53.
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ksbias

#endif  // KSBIAS_RANDOM_HPP_
