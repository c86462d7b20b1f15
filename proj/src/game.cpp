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

#include "ucg/game.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

namespace ucg {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::classical: return "classical";
    case ModelKind::clifford: return "clifford";
    case ModelKind::haar: return "haar";
    case ModelKind::fredkin: return "fredkin";
  }
  return "unknown";
}

std::string_view to_string(InitialState init) {
  switch (init) {
    case InitialState::flat: return "flat";
    case InitialState::pyramid: return "pyramid";
    case InitialState::haar_random: return "haar_random";
  }
  return "unknown";
}

std::string_view to_string(DisentanglerStrategy strategy) {
  switch (strategy) {
    case DisentanglerStrategy::ordered_19: return "ordered_19";
    case DisentanglerStrategy::random_19: return "random_19";
    case DisentanglerStrategy::random_full: return "random_full";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  if (name == "classical") return ModelKind::classical;
  if (name == "clifford") return ModelKind::clifford;
  if (name == "haar") return ModelKind::haar;
  if (name == "fredkin") return ModelKind::fredkin;
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

InitialState parse_initial_state(std::string_view name) {
  if (name == "flat" || name == "product") return InitialState::flat;
  if (name == "pyramid") return InitialState::pyramid;
  if (name == "haar_random") return InitialState::haar_random;
  throw ConfigError("unknown initial state '" + std::string(name) + "'");
}

DisentanglerStrategy parse_strategy(std::string_view name) {
  if (name == "ordered_19") return DisentanglerStrategy::ordered_19;
  if (name == "random_19") return DisentanglerStrategy::random_19;
  if (name == "random_full") return DisentanglerStrategy::random_full;
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

void OptimizerConfig::validate() const {
  if (n_starts < 1) throw ConfigError("optimizer n_starts must be >= 1");
  if (max_iterations < 1) throw ConfigError("optimizer max_iterations must be >= 1");
  if (max_restarts < 0) throw ConfigError("optimizer max_restarts must be >= 0");
  if (!(initial_step > 0) || !(f_tolerance > 0) || !(x_tolerance > 0) ||
      !(entropy_threshold > 0)) {
    throw ConfigError("optimizer tolerances must be positive");
  }
  if (!(renyi_order > 0)) throw ConfigError("renyi order must be positive");
}

void GameConfig::validate() const {
  if (L < 2) throw ConfigError("L must be >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  if (n_trajectories < 1) throw ConfigError("n_trajectories must be >= 1");
  if (t_measure < 1) throw ConfigError("t_measure must be >= 1");
  if (measure_every < 1) throw ConfigError("measure_every must be >= 1");
  if (model == ModelKind::haar && L > 16) {
    throw ConfigError("haar model supports at most 16 qubits");
  }
  if (initial == InitialState::pyramid && model != ModelKind::classical) {
    throw ConfigError("pyramid initial state is only defined for the classical model");
  }
  if (initial == InitialState::haar_random && model != ModelKind::haar) {
    throw ConfigError("haar_random initial state is only defined for the haar model");
  }
  optimizer.validate();
}

std::optional<double> critical_point(ModelKind model) {
  switch (model) {
    case ModelKind::classical: return 0.5;
    case ModelKind::clifford: return 0.382;
    case ModelKind::fredkin: return 0.5;
    case ModelKind::haar: return std::nullopt;
  }
  return std::nullopt;
}

std::size_t default_burn_in(ModelKind model, std::size_t L, double p) {
  const auto pc = critical_point(model);
  if (pc && std::abs(p - *pc) < 0.05) return 5 * L * L;
  return 10 * L;
}

std::vector<std::size_t> growth_times(const GameConfig& cfg) {
  std::vector<std::size_t> times;
  if (cfg.t_burn == 0) return times;
  if (cfg.growth_points_per_decade > 0) {
    std::set<std::size_t> unique;
    const double step = 1.0 / static_cast<double>(cfg.growth_points_per_decade);
    for (double e = 0.0;; e += step) {
      const auto t = static_cast<std::size_t>(std::llround(std::pow(10.0, e)));
      if (t > cfg.t_burn) break;
      unique.insert(t);
    }
    unique.insert(cfg.t_burn);
    times.assign(unique.begin(), unique.end());
  } else if (cfg.growth_every > 0) {
    for (std::size_t t = cfg.growth_every; t <= cfg.t_burn; t += cfg.growth_every) {
      times.push_back(t);
    }
  }
  return times;
}

void compute_w_contributions(TrajectoryRecord& record) {
  std::vector<double> mean;
  std::size_t count = 0;
  for (const auto& row : record.rows) {
    if (!row.steady || row.profile.empty()) continue;
    if (mean.empty()) mean.assign(row.profile.size(), 0.0);
    for (std::size_t x = 0; x < mean.size(); ++x) mean[x] += row.profile[x];
    ++count;
  }
  if (count == 0) return;
  for (double& m : mean) m /= static_cast<double>(count);
  for (auto& row : record.rows) {
    if (!row.steady || row.profile.empty()) continue;
    double sum = 0.0;
    for (std::size_t x = 0; x < mean.size(); ++x) {
      const double d = row.profile[x] - mean[x];
      sum += d * d;
    }
    row.w = std::sqrt(sum / static_cast<double>(mean.size()));
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CIRCUIT_GAME_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

}  // namespace ucg
