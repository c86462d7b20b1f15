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

#include <cstddef>
#include <span>
#include <vector>

#include "ucg/game.hpp"

namespace ucg {

/// Integer surface S_0..S_{L+1} over L interior bonds with open boundaries
/// (S_0 = S_{L+1} = 0), non-negative heights and the RSOS step constraint.
class HeightProfile {
 public:
  /// Flat zero profile.
  explicit HeightProfile(std::size_t bonds);

  /// Maximal profile min(x, L+1-x).
  static HeightProfile pyramid(std::size_t bonds);

  /// Full array including both boundary entries. Throws ConfigError when
  /// the array violates any profile invariant.
  static HeightProfile from_heights(std::vector<int> heights);

  std::size_t bonds() const noexcept { return heights_.size() - 2; }
  int operator[](std::size_t x) const { return heights_.at(x); }
  std::span<const int> heights() const noexcept { return heights_; }

  /// S_x <- min(S_{x-1}, S_{x+1}) + 1. Throws std::out_of_range unless 1 <= x <= L.
  void entangle_bond(std::size_t x);
  /// S_x <- max(S_{x-1}, S_{x+1}, 1) - 1.
  void disentangle_bond(std::size_t x);

  bool valid() const noexcept;

  friend bool operator==(const HeightProfile&, const HeightProfile&) = default;

 private:
  explicit HeightProfile(std::vector<int> heights) : heights_(std::move(heights)) {}
  void check_bond(std::size_t x) const;

  std::vector<int> heights_;
};

/// Classical game adaptor for run_trajectory.
class ClassicalGame {
 public:
  explicit ClassicalGame(HeightProfile initial) : profile_(std::move(initial)) {}

  std::size_t bond_count() const noexcept { return profile_.bonds(); }
  void update(const ScheduleStep& step, Rng&) {
    if (step.player == Player::entangler) {
      profile_.entangle_bond(step.bond);
    } else {
      profile_.disentangle_bond(step.bond);
    }
  }
  std::vector<double> profile() const;
  double half_chain() const { return profile_[profile_.bonds() / 2]; }
  const HeightProfile& heights() const noexcept { return profile_; }

 private:
  HeightProfile profile_;
};

ClassicalGame make_classical_game(const GameConfig& cfg);

}  // namespace ucg
