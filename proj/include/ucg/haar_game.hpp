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

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "ucg/game.hpp"
#include "ucg/rng.hpp"
#include "ucg/state_vector.hpp"

namespace ucg {

/// Rz(a) Ry(b) Rz(c).
Eigen::Matrix2cd euler_rotation(double a, double b, double c);

/// exp(i (t0 XX + t1 YY + t2 ZZ)) (R(t3, t4, t5) x R(t6, t7, t8)). Any
/// two-qubit unitary equals this up to single-qubit gates applied afterwards,
/// which cannot change the entropy of the cut.
Matrix4c gate_from_params(const Eigen::VectorXd& theta);

struct DisentangleResult {
  double before = 0.0;
  double after = 0.0;
  bool applied = false;
  // The winning simplex run stopped on its iteration budget.
  bool hit_cap = false;
  int evaluations = 0;
};

/// Multi-start simplex search over the 9 gate parameters for the gate that
/// minimizes the entropy of the cut at `bond`; applies it if it helps. The
/// first start is the identity, so the entropy never increases.
DisentangleResult minimize_bond_entropy(StateVector& state, std::size_t bond,
                                        const OptimizerConfig& cfg, Rng& rng);

class HaarGame {
 public:
  HaarGame(StateVector initial, OptimizerConfig optimizer);

  std::size_t bond_count() const noexcept { return state_.qubits() - 1; }
  void update(const ScheduleStep& step, Rng& rng);
  std::vector<double> profile() const { return {entropy_.begin() + 1, entropy_.end() - 1}; }
  double half_chain() const { return entropy_[state_.qubits() / 2]; }
  std::size_t cap_hits() const noexcept { return cap_hits_; }
  const StateVector& state() const noexcept { return state_; }

 private:
  StateVector state_;
  OptimizerConfig optimizer_;
  std::vector<double> entropy_;  // S_0 .. S_L, ends fixed at 0
  std::size_t cap_hits_ = 0;
};

/// Product start, or a Haar-random state drawn from `seed`.
HaarGame make_haar_game(const GameConfig& cfg, uint64_t seed);

/// Sum of bond entropies (bits) counted as disentangled: 1e-3 L nats.
double haar_disentangled_threshold(std::size_t qubits);

struct HaarDisentangleOutcome {
  std::size_t n_d = 0;
  bool censored = false;
};

/// Builds a state with n_e Haar gates on random bonds, then optimizes random
/// bonds until the summed entropy drops below haar_disentangled_threshold.
/// n_d counts optimized bonds (probes); censored when max_probes is reached.
HaarDisentangleOutcome haar_disentangle_experiment(std::size_t qubits, std::size_t n_e,
                                                   Rng& rng, const OptimizerConfig& cfg,
                                                   std::size_t max_probes);

}  // namespace ucg
