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

#include <map>

#include "doctest.h"
#include "ucg/classical.hpp"
#include "ucg/errors.hpp"

using namespace ucg;

namespace {

HeightProfile H(std::vector<int> h) { return HeightProfile::from_heights(std::move(h)); }

// Every valid profile over `bonds` bonds, enumerated directly.
std::vector<std::vector<int>> all_profiles(std::size_t bonds) {
  std::vector<std::vector<int>> out;
  std::vector<int> h(bonds + 2, 0);
  auto rec = [&](auto& self, std::size_t x) -> void {
    if (x == bonds + 1) {
      if (std::abs(h[bonds]) <= 1) out.push_back(h);
      return;
    }
    for (int d = -1; d <= 1; ++d) {
      const int v = h[x - 1] + d;
      if (v < 0) continue;
      h[x] = v;
      self(self, x + 1);
    }
    h[x] = 0;
  };
  rec(rec, 1);
  return out;
}

}  // namespace

TEST_CASE("entangle examples") {
  HeightProfile flat(3);
  flat.entangle_bond(2);
  CHECK(flat == H({0, 0, 1, 0, 0}));

  auto a = H({0, 1, 1, 1, 0});
  a.entangle_bond(2);
  CHECK(a == H({0, 1, 2, 1, 0}));
  a.entangle_bond(2);
  CHECK(a == H({0, 1, 2, 1, 0}));
}

TEST_CASE("disentangle examples") {
  auto a = H({0, 0, 1, 0, 0});
  a.disentangle_bond(2);
  CHECK(a == H({0, 0, 0, 0, 0}));
  a.disentangle_bond(2);
  CHECK(a == H({0, 0, 0, 0, 0}));
  auto b = H({0, 1, 2, 1, 0});
  b.disentangle_bond(2);
  CHECK(b == H({0, 1, 0, 1, 0}));
}

TEST_CASE("out-of-range bonds and invalid profiles") {
  HeightProfile p(4);
  CHECK_THROWS_AS(p.entangle_bond(0), std::out_of_range);
  CHECK_THROWS_AS(p.disentangle_bond(5), std::out_of_range);
  CHECK_THROWS_AS(H({0, 2, 0}), ConfigError);
  CHECK_THROWS_AS(H({1, 0, 0}), ConfigError);
  CHECK_THROWS_AS(H({0, -1, 0}), ConfigError);
}

TEST_CASE("random update sequences keep every invariant") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t L = 1 + rng.below(40);
    HeightProfile p(L);
    for (int k = 0; k < 5000; ++k) {
      const std::size_t x = 1 + rng.below(L);
      const int before = p[x];
      if (rng.bernoulli(0.4)) {
        p.disentangle_bond(x);
        REQUIRE(p[x] <= before);
      } else {
        p.entangle_bond(x);
        REQUIRE(p[x] >= before);
      }
      REQUIRE(p.valid());
      for (std::size_t y = 1; y <= L; ++y) {
        REQUIRE(p[y] <= static_cast<int>(std::min(y, L + 1 - y)));
      }
    }
  }
}

TEST_CASE("pyramid is a fixed point of the entangler") {
  auto p = HeightProfile::pyramid(64);
  const auto copy = p;
  for (std::size_t x = 1; x <= 64; ++x) p.entangle_bond(x);
  CHECK(p == copy);
  CHECK(p[1] == 1);
  CHECK(p[32] == 32);
  CHECK(p[33] == 32);
}

TEST_CASE("game steady state matches the exact stationary distribution") {
  const std::size_t L = 4;
  const double pd = 0.5;
  const auto states = all_profiles(L);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = i;

  // Transition matrix of one update, built from the rules directly.
  const std::size_t n = states.size();
  std::vector<std::vector<double>> T(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 1; x <= L; ++x) {
      auto up = states[i];
      up[x] = std::min(up[x - 1], up[x + 1]) + 1;
      auto down = states[i];
      down[x] = std::max({down[x - 1], down[x + 1], 1}) - 1;
      T[i][index.at(up)] += (1 - pd) / L;
      T[i][index.at(down)] += pd / L;
    }
  }
  std::vector<double> pi(n, 1.0 / n);
  for (int it = 0; it < 20000; ++it) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += pi[i] * T[i][j];
    pi = next;
  }

  ClassicalGame game{HeightProfile(L)};
  Rng rng(2);
  std::vector<double> hist(n, 0.0);
  const int samples = 2000000;
  for (int k = 0; k < 1000; ++k) game.update(schedule_step(rng, L, pd), rng);
  for (int k = 0; k < samples; ++k) {
    game.update(schedule_step(rng, L, pd), rng);
    const auto h = game.heights().heights();
    hist[index.at(std::vector<int>(h.begin(), h.end()))] += 1.0 / samples;
  }
  double tv = 0.0;
  for (std::size_t i = 0; i < n; ++i) tv += 0.5 * std::abs(hist[i] - pi[i]);
  CHECK(tv < 0.02);
}
