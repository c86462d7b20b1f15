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

#include "ucg/classical.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ucg {

HeightProfile::HeightProfile(std::size_t bonds) : heights_(bonds + 2, 0) {
  if (bonds < 1) throw ConfigError("height profile needs at least one bond");
}

HeightProfile HeightProfile::pyramid(std::size_t bonds) {
  HeightProfile profile(bonds);
  for (std::size_t x = 1; x <= bonds; ++x) {
    profile.heights_[x] = static_cast<int>(std::min(x, bonds + 1 - x));
  }
  return profile;
}

HeightProfile HeightProfile::from_heights(std::vector<int> heights) {
  if (heights.size() < 3) throw ConfigError("height profile needs at least one bond");
  HeightProfile profile(std::move(heights));
  if (!profile.valid()) throw ConfigError("heights violate the RSOS/boundary constraints");
  return profile;
}

void HeightProfile::check_bond(std::size_t x) const {
  if (x < 1 || x > bonds()) {
    throw std::out_of_range("bond " + std::to_string(x) + " outside 1.." +
                            std::to_string(bonds()));
  }
}

void HeightProfile::entangle_bond(std::size_t x) {
  check_bond(x);
  heights_[x] = std::min(heights_[x - 1], heights_[x + 1]) + 1;
}

void HeightProfile::disentangle_bond(std::size_t x) {
  check_bond(x);
  heights_[x] = std::max({heights_[x - 1], heights_[x + 1], 1}) - 1;
}

bool HeightProfile::valid() const noexcept {
  if (heights_.front() != 0 || heights_.back() != 0) return false;
  const std::size_t n = heights_.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (heights_[x] < 0) return false;
    if (x + 1 < n && std::abs(heights_[x] - heights_[x + 1]) > 1) return false;
  }
  return true;
}

std::vector<double> ClassicalGame::profile() const {
  const auto h = profile_.heights();
  return {h.begin() + 1, h.end() - 1};
}

ClassicalGame make_classical_game(const GameConfig& cfg) {
  if (cfg.initial == InitialState::pyramid) {
    return ClassicalGame(HeightProfile::pyramid(cfg.L));
  }
  return ClassicalGame(HeightProfile(cfg.L));
}

}  // namespace ucg
