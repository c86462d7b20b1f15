// Copyright 2026 The ucg Authors
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

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ucg {

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr uint64_t mix64(uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Seed of trajectory `index` within an ensemble keyed by `master_seed`.
///
/// For a fixed master seed the map index -> seed is injective: the counter
/// master + (index + 1) * gamma is injective modulo 2^64 because gamma is odd,
/// and mix64 is a bijection.
constexpr uint64_t spawn_trajectory_seed(uint64_t master_seed,
                                         uint64_t trajectory_index) noexcept {
  return mix64(master_seed + (trajectory_index + 1) * kGoldenGamma);
}

/// xoshiro256** seeded through SplitMix64. Satisfies
/// UniformRandomBitGenerator, so it also plugs into <random> distributions.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed) noexcept {
    uint64_t s = seed;
    for (auto& word : state_) {
      s += kGoldenGamma;
      word = mix64(s);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform integer in [0, n). Lemire's multiply-and-reject, exactly unbiased.
  uint64_t below(uint64_t n) noexcept {
    uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<uint64_t>(m);
    if (low < n) {
      const uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * n;
        low = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// True with probability exactly p for p in {0, 1}; p outside [0,1] clamps.
  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Standard normal deviate (Marsaglia polar method).
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

  /// Exponential deviate with the given rate.
  double exponential(double rate) noexcept {
    return -std::log1p(-uniform()) / rate;
  }

  /// Advance by 2^128 draws; successive jumps give non-overlapping streams.
  void jump() noexcept {
    constexpr std::array<uint64_t, 4> kJump = {
        0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
        0x39abdc4529b1661cULL};
    std::array<uint64_t, 4> acc{};
    for (uint64_t word : kJump) {
      for (int b = 0; b < 64; ++b) {
        if (word & (uint64_t{1} << b)) {
          for (int i = 0; i < 4; ++i) acc[i] ^= state_[i];
        }
        (*this)();
      }
    }
    state_ = acc;
    has_spare_ = false;
  }

 private:
  static constexpr uint64_t rotl(uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ucg
