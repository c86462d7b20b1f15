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

#include <set>

#include "doctest.h"
#include "ucg/classical.hpp"
#include "ucg/clifford_game.hpp"
#include "ucg/errors.hpp"
#include "ucg/game.hpp"

using namespace ucg;

namespace {

GameConfig classical_cfg(std::size_t L, double p) {
  GameConfig cfg;
  cfg.model = ModelKind::classical;
  cfg.L = L;
  cfg.p = p;
  cfg.t_burn = 20;
  cfg.t_measure = 50;
  cfg.measure_every = 5;
  return cfg;
}

bool same_records(const TrajectoryRecord& a, const TrajectoryRecord& b) {
  if (a.seed != b.seed || a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (x.t != y.t || x.s_half != y.s_half || x.profile != y.profile || x.w != y.w ||
        x.steady != y.steady)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("degenerate coins") {
  Rng rng(1);
  for (int k = 0; k < 10000; ++k) {
    CHECK(schedule_step(rng, 5, 0.0).player == Player::entangler);
    CHECK(schedule_step(rng, 5, 1.0).player == Player::disentangler);
  }
}

TEST_CASE("bond choice is uniform") {
  Rng rng(2);
  std::array<int, 3> counts{};
  const int n = 1000000;
  for (int k = 0; k < n; ++k) {
    const auto s = schedule_step(rng, 3, 0.5);
    REQUIRE(s.bond >= 1);
    REQUIRE(s.bond <= 3);
    ++counts[s.bond - 1];
  }
  const double sigma = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
  for (int c : counts) CHECK(std::abs(c - n / 3.0) < 3 * sigma);
}

TEST_CASE("trajectory seeds") {
  Rng rng(3);
  CHECK(spawn_trajectory_seed(5, 7) == spawn_trajectory_seed(5, 7));
  for (int k = 0; k < 10000; ++k) {
    const uint64_t s = rng(), i = rng.below(1u << 20);
    CHECK(spawn_trajectory_seed(s, 0) != spawn_trajectory_seed(s, 1));
    CHECK(spawn_trajectory_seed(s, i) != spawn_trajectory_seed(s + 1, i));
  }
}

TEST_CASE("config validation") {
  GameConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.p = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.p = 0.5;
  cfg.L = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.L = 20;
  cfg.model = ModelKind::haar;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.L = 8;
  cfg.t_measure = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS(parse_model("ising"), ConfigError);
  CHECK(parse_strategy("random_full") == DisentanglerStrategy::random_full);
}

TEST_CASE("burn-in heuristic") {
  CHECK(default_burn_in(ModelKind::classical, 64, 0.5) == 5 * 64 * 64);
  CHECK(default_burn_in(ModelKind::classical, 64, 0.2) == 640);
  CHECK(default_burn_in(ModelKind::clifford, 32, 0.40) == 5 * 32 * 32);
  CHECK(default_burn_in(ModelKind::haar, 10, 0.5) == 100);
}

TEST_CASE("growth times") {
  GameConfig cfg = classical_cfg(8, 0.5);
  cfg.t_burn = 1000;
  cfg.growth_points_per_decade = 1;
  CHECK(growth_times(cfg) == std::vector<std::size_t>{1, 10, 100, 1000});
  cfg.growth_points_per_decade = 0;
  cfg.growth_every = 250;
  CHECK(growth_times(cfg) == std::vector<std::size_t>{250, 500, 750, 1000});
}

TEST_CASE("classical p = 1 stays at zero") {
  GameConfig cfg = classical_cfg(32, 1.0);
  auto game = make_classical_game(cfg);
  const auto rec = run_trajectory(game, cfg, 11);
  REQUIRE(rec.rows.size() == 10);
  for (const auto& row : rec.rows) {
    CHECK(row.s_half == 0.0);
    for (double s : row.profile) CHECK(s == 0.0);
    CHECK(row.w == 0.0);
  }
}

TEST_CASE("classical p = 0 reaches the pyramid") {
  GameConfig cfg = classical_cfg(64, 0.0);
  cfg.t_burn = 20000;
  cfg.t_measure = 1;
  cfg.measure_every = 1;
  auto game = make_classical_game(cfg);
  const auto rec = run_trajectory(game, cfg, 4);
  REQUIRE(rec.rows.size() == 1);
  const auto& prof = rec.rows[0].profile;
  for (std::size_t x = 1; x <= 64; ++x) CHECK(prof[x - 1] == std::min(x, 65 - x));
}

TEST_CASE("record layout") {
  GameConfig cfg = classical_cfg(16, 0.5);
  cfg.growth_every = 5;
  cfg.keep_profiles = false;
  auto game = make_classical_game(cfg);
  const auto rec = run_trajectory(game, cfg, 1);
  CHECK(rec.rows.size() == 4 + 10);
  for (std::size_t i = 1; i < rec.rows.size(); ++i) CHECK(rec.rows[i].t > rec.rows[i - 1].t);
  for (const auto& row : rec.rows) CHECK(row.profile.empty());
  CHECK(rec.rows.front().steady == false);
  CHECK(rec.rows.back().steady == true);
}

TEST_CASE("spatial fluctuation contributions") {
  TrajectoryRecord rec;
  MeasurementRow a, b;
  a.t = 1;
  a.profile = {0, 0, 0};
  b.t = 2;
  b.profile = {2, 2, 2};
  rec.rows = {a, b};
  compute_w_contributions(rec);
  CHECK(rec.rows[0].w == doctest::Approx(1.0));
  CHECK(rec.rows[1].w == doctest::Approx(1.0));
}

TEST_CASE("clifford trajectories are reproducible") {
  GameConfig cfg;
  cfg.model = ModelKind::clifford;
  cfg.L = 8;
  cfg.p = 0.4;
  cfg.t_burn = 30;
  cfg.t_measure = 40;
  cfg.n_trajectories = 6;
  auto make = [](const GameConfig& c, uint64_t) { return make_clifford_game(c); };
  const auto a = run_ensemble(cfg, make, 1);
  const auto b = run_ensemble(cfg, make, 3);
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].trajectory_index == i);
    CHECK(same_records(a[i], b[i]));
  }
  CHECK_FALSE(same_records(a[0], a[1]));
}

TEST_CASE("parallel map rethrows job failures") {
  auto job = [](std::size_t i) -> int {
    if (i == 3) throw CapExceeded("boom");
    return static_cast<int>(i);
  };
  CHECK_THROWS_AS(parallel_map<int>(8, 2, job), CapExceeded);
  const auto ok = parallel_map<int>(8, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (int i = 0; i < 8; ++i) CHECK(ok[i] == i * i);
}
