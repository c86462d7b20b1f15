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

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ucg/errors.hpp"
#include "ucg/rng.hpp"

namespace ucg {

enum class ModelKind { classical, clifford, haar, fredkin };
enum class Player { entangler, disentangler };
enum class InitialState { flat, pyramid, haar_random };
enum class DisentanglerStrategy { ordered_19, random_19, random_full };

std::string_view to_string(ModelKind kind);
std::string_view to_string(InitialState init);
std::string_view to_string(DisentanglerStrategy strategy);
ModelKind parse_model(std::string_view name);
InitialState parse_initial_state(std::string_view name);
DisentanglerStrategy parse_strategy(std::string_view name);

/// Knobs of the multi-start simplex disentangler used by the Haar model.
struct OptimizerConfig {
  int n_starts = 8;
  int max_iterations = 400;
  int max_restarts = 2;
  double initial_step = 0.5;
  double f_tolerance = 1e-10;
  double x_tolerance = 1e-7;
  // Entropy (bits) below which a bond counts as disentangled.
  double entropy_threshold = 1e-9;
  double renyi_order = 1.0;

  void validate() const;
};

struct GameConfig {
  ModelKind model = ModelKind::classical;
  // Classical: number of bonds. Quantum models: number of qubits.
  std::size_t L = 16;
  // Disentangler probability, or c for the Fredkin chain.
  double p = 0.5;
  uint64_t master_seed = 1;
  std::size_t n_trajectories = 1;
  std::size_t t_burn = 0;
  std::size_t t_measure = 1;
  std::size_t measure_every = 10;
  // Rows recorded during burn-in. 0 disables growth recording.
  std::size_t growth_every = 0;
  // When positive, burn-in rows are log-spaced with this many per decade.
  std::size_t growth_points_per_decade = 0;
  bool keep_growth_profiles = false;
  bool keep_profiles = true;
  InitialState initial = InitialState::flat;
  DisentanglerStrategy strategy = DisentanglerStrategy::ordered_19;
  OptimizerConfig optimizer{};

  void validate() const;
};

/// Burn-in heuristic: 5 L^2 time steps near the model's critical point,
/// 10 L deep inside a phase.
std::size_t default_burn_in(ModelKind model, std::size_t L, double p);

/// Critical disentangler probability of a model, if it has one.
std::optional<double> critical_point(ModelKind model);

struct ScheduleStep {
  std::size_t bond;  // 1-based
  Player player;
};

/// Uniform bond in 1..bond_count, then the disentangler coin with bias p.
inline ScheduleStep schedule_step(Rng& rng, std::size_t bond_count, double p) {
  const std::size_t bond = 1 + static_cast<std::size_t>(rng.below(bond_count));
  const Player player =
      rng.bernoulli(p) ? Player::disentangler : Player::entangler;
  return {bond, player};
}

struct MeasurementRow {
  double t = 0.0;
  double s_half = 0.0;
  std::vector<double> profile;
  // sqrt(mean_x (S_x - Sbar_x)^2) against the trajectory's steady-state mean
  // profile. Zero on growth rows.
  double w = 0.0;
  bool steady = true;
};

struct TrajectoryRecord {
  GameConfig config;
  std::size_t trajectory_index = 0;
  uint64_t seed = 0;
  std::vector<MeasurementRow> rows;
  // Updates where a budgeted inner routine (optimizer) stopped early.
  std::size_t cap_hits = 0;
};

/// Times (in whole time steps) at which growth rows are recorded.
std::vector<std::size_t> growth_times(const GameConfig& cfg);

/// Fills MeasurementRow::w of the steady rows. Requires stored profiles.
void compute_w_contributions(TrajectoryRecord& record);

/// Any model driven by the shared schedule.
template <class M>
concept GameModel = requires(M m, const M cm, const ScheduleStep& s, Rng& r) {
  { cm.bond_count() } -> std::convertible_to<std::size_t>;
  { m.update(s, r) };
  { cm.profile() } -> std::convertible_to<std::vector<double>>;
  { cm.half_chain() } -> std::convertible_to<double>;
};

/// Runs t_burn + t_measure time steps of cfg.L schedule steps each.
template <GameModel Model>
TrajectoryRecord run_trajectory(Model& model, const GameConfig& cfg,
                                uint64_t seed, std::size_t index = 0) {
  cfg.validate();
  TrajectoryRecord record;
  record.config = cfg;
  record.trajectory_index = index;
  record.seed = seed;

  Rng rng(seed);
  const std::vector<std::size_t> growth = growth_times(cfg);
  std::size_t next_growth = 0;
  const std::size_t bonds = model.bond_count();
  const std::size_t total = cfg.t_burn + cfg.t_measure;
  record.rows.reserve(growth.size() + cfg.t_measure / cfg.measure_every);

  for (std::size_t t = 1; t <= total; ++t) {
    for (std::size_t k = 0; k < cfg.L; ++k) {
      model.update(schedule_step(rng, bonds, cfg.p), rng);
    }
    if (t <= cfg.t_burn) {
      if (next_growth < growth.size() && growth[next_growth] == t) {
        MeasurementRow row;
        row.t = static_cast<double>(t);
        row.s_half = model.half_chain();
        if (cfg.keep_growth_profiles) row.profile = model.profile();
        row.steady = false;
        record.rows.push_back(std::move(row));
        ++next_growth;
      }
    } else if ((t - cfg.t_burn) % cfg.measure_every == 0) {
      MeasurementRow row;
      row.t = static_cast<double>(t);
      row.s_half = model.half_chain();
      row.profile = model.profile();
      record.rows.push_back(std::move(row));
    }
  }
  compute_w_contributions(record);
  if (!cfg.keep_profiles) {
    for (auto& row : record.rows) {
      if (row.steady) row.profile.clear();
    }
  }
  if constexpr (requires { model.cap_hits(); }) {
    record.cap_hits = model.cap_hits();
  }
  return record;
}

/// Worker count: explicit request, else CIRCUIT_GAME_THREADS, else hardware.
unsigned resolve_threads(unsigned requested);

/// Runs `count` independent jobs on a pool. Results land at their job index,
/// so the output never depends on scheduling. The first exception thrown by
/// any job is rethrown after all workers join.
template <class Result, class Job>
std::vector<Result> parallel_map(std::size_t count, unsigned threads, Job job) {
  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        slots[i].emplace(job(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, count));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

/// Runs cfg.n_trajectories trajectories. `make_model(cfg, seed)` builds the
/// initial state of one trajectory; its seed is derived from the trajectory
/// seed so the schedule stream stays untouched.
template <class Factory>
std::vector<TrajectoryRecord> run_ensemble(const GameConfig& cfg,
                                           Factory make_model,
                                           unsigned threads = 0) {
  cfg.validate();
  return parallel_map<TrajectoryRecord>(
      cfg.n_trajectories, resolve_threads(threads), [&](std::size_t i) {
        const uint64_t seed = spawn_trajectory_seed(cfg.master_seed, i);
        auto model = make_model(cfg, mix64(seed ^ 0x5ca1ab1eULL));
        return run_trajectory(model, cfg, seed, i);
      });
}

}  // namespace ucg
