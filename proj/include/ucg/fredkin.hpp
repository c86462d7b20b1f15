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
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ucg/game.hpp"
#include "ucg/rng.hpp"

namespace ucg {

/// Stochastic Fredkin chain at half filling, simulated event by event.
///
/// A move swaps an internal pair (i, i+1) between "10" and "01"; its rate
/// depends on the outer neighbours of the 4-site window (i-1 .. i+2):
///
///   1100 -> 1010 : 2(1-c)     1010 -> 1100 : 2c
///   1101 -> 1011 : 1-c        1011 -> 1101 : c
///   0100 -> 0010 : 1-c        0010 -> 0100 : c
///   0101 <-> 0011 : forbidden
class FredkinChain {
 public:
  /// Throws ConfigError unless occupations form a Dyck path (h_n >= 0,
  /// h_L = 0) of even length >= 4 and 0 < c < 1.
  FredkinChain(std::vector<uint8_t> occupations, double c);

  /// Alternating 1010...10 start (the lowest Dyck path).
  static FredkinChain zigzag(std::size_t L, double c);

  struct Event {
    std::size_t pair;  // 1-based left site of the swapped pair
    double dwell;      // time spent in the state before the move
  };

  /// One Gillespie event: exponential dwell at the total rate, then a move
  /// drawn proportionally to its rate. Throws std::logic_error when no move
  /// is enabled.
  Event step(Rng& rng);

  std::size_t size() const noexcept { return z_.size() - 1; }
  double c() const noexcept { return c_; }
  double time() const noexcept { return time_; }
  double total_rate() const noexcept;
  const std::vector<uint8_t>& occupations() const noexcept { return z_; }
  /// h_1..h_L.
  std::vector<int> heights() const;
  int height(std::size_t n) const { return h_.at(n); }

  /// Rate of swapping pair (i, i+1), 1-based; zero at the chain edges.
  double pair_rate(std::size_t i) const;

  /// Time integral of h_n since the last reset, n = 1..L-1.
  std::vector<double> integrated_profile() const;
  void reset_integrals();

 private:
  enum RateClass : int8_t { kNone = -1, kDown2 = 0, kUp2 = 1, kDown1 = 2, kUp1 = 3 };

  RateClass classify(std::size_t i) const;
  void refresh(std::size_t i);
  void set_class(std::size_t i, RateClass cls);

  double c_;
  std::vector<uint8_t> z_;   // z_[0] unused, sites 1..L
  std::vector<int> h_;       // h_[0] = 0, h_[n] = sum_{i<=n} (2 z_i - 1)
  std::array<double, 4> class_rate_{};
  // Enabled pairs grouped by rate class, with back-pointers for O(1) updates.
  std::array<std::vector<std::size_t>, 4> members_;
  std::vector<int8_t> class_of_;
  std::vector<std::size_t> slot_of_;
  double time_ = 0.0;
  std::vector<double> integral_;
  std::vector<double> last_change_;
};

/// Uniform Dyck path of even length L (the c = 1/2 stationary law), drawn
/// with the cycle lemma.
std::vector<uint8_t> sample_dyck_path(std::size_t L, Rng& rng);

/// Zigzag start with c = cfg.p. Burn-in, measurement length and spacing are
/// read in units of continuous time; rows hold the instantaneous heights
/// h_1..h_{L-1} at each sample time.
TrajectoryRecord run_fredkin_trajectory(const GameConfig& cfg, uint64_t seed,
                                        std::size_t index = 0);

std::vector<TrajectoryRecord> run_fredkin_ensemble(const GameConfig& cfg, unsigned threads = 0);

/// Large-L mean height profile (4/sqrt(2 pi)) sqrt(x (L-x) / L).
double fredkin_profile(double x, double L);

/// |1 / ln(c / (1-c))|. Throws std::domain_error at c = 1/2 (divergent) and
/// outside (0, 1).
double correlation_length(double c);

}  // namespace ucg
