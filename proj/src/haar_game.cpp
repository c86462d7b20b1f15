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

#include "ucg/haar_game.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "ucg/errors.hpp"
#include "ucg/nelder_mead.hpp"

namespace ucg {

Eigen::Matrix2cd euler_rotation(double a, double b, double c) {
  const Complex i(0.0, 1.0);
  auto rz = [&](double t) {
    Eigen::Matrix2cd m;
    m << std::exp(-i * (t / 2)), 0, 0, std::exp(i * (t / 2));
    return m;
  };
  Eigen::Matrix2cd ry;
  ry << std::cos(b / 2), -std::sin(b / 2), std::sin(b / 2), std::cos(b / 2);
  return rz(a) * ry * rz(c);
}

Matrix4c gate_from_params(const Eigen::VectorXd& theta) {
  if (theta.size() != 9) throw ConfigError("disentangler needs 9 parameters");
  if (!theta.allFinite()) throw ConfigError("disentangler parameters must be finite");
  const Complex i(0.0, 1.0);
  Matrix4c xx, yy, zz;
  xx << 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0;
  yy << 0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0;
  zz = Eigen::Vector4cd(1, -1, -1, 1).asDiagonal();
  // The three generators commute, so the exponential factorizes.
  const Matrix4c id = Matrix4c::Identity();
  const Matrix4c interaction = (std::cos(theta(0)) * id + i * std::sin(theta(0)) * xx) *
                               (std::cos(theta(1)) * id + i * std::sin(theta(1)) * yy) *
                               (std::cos(theta(2)) * id + i * std::sin(theta(2)) * zz);
  const Eigen::Matrix2cd r1 = euler_rotation(theta(3), theta(4), theta(5));
  const Eigen::Matrix2cd r2 = euler_rotation(theta(6), theta(7), theta(8));
  Matrix4c local;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) local.block<2, 2>(2 * a, 2 * b) = r1(a, b) * r2;
  return interaction * local;
}

DisentangleResult minimize_bond_entropy(StateVector& state, std::size_t bond,
                                        const OptimizerConfig& cfg, Rng& rng) {
  DisentangleResult out;
  const double alpha = cfg.renyi_order;
  out.before = bond_entropy(state, bond, alpha);
  out.after = out.before;
  if (out.before <= cfg.entropy_threshold) return out;

  const BondCore core(state, bond);
  const Objective f = [&](const Eigen::VectorXd& th) {
    return core.entropy_after(gate_from_params(th), alpha);
  };
  NelderMeadOptions opts;
  opts.max_iterations = cfg.max_iterations;
  opts.initial_step = cfg.initial_step;
  opts.f_tolerance = cfg.f_tolerance;
  opts.x_tolerance = cfg.x_tolerance;
  opts.target = cfg.entropy_threshold;

  Eigen::VectorXd best_x = Eigen::VectorXd::Zero(9);
  double best_f = out.before;
  bool best_capped = false;
  for (int start = 0; start < cfg.n_starts; ++start) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(9);
    if (start > 0) {
      for (int k = 0; k < 9; ++k) x0(k) = std::numbers::pi * (2.0 * rng.uniform() - 1.0);
    }
    NelderMeadResult run = nelder_mead(f, x0, opts);
    out.evaluations += run.evaluations;
    // Restart from the stalled point with a fresh simplex while it still helps.
    for (int r = 0; r < cfg.max_restarts && !run.reached_target; ++r) {
      NelderMeadResult again = nelder_mead(f, run.x, opts);
      out.evaluations += again.evaluations;
      const bool improved = again.f < run.f - cfg.f_tolerance;
      if (again.f < run.f) run = std::move(again);
      if (!improved) break;
    }
    if (run.f < best_f) {
      best_f = run.f;
      best_x = run.x;
      best_capped = !run.converged && !run.reached_target;
    }
    if (best_f <= cfg.entropy_threshold) break;
  }
  out.hit_cap = best_capped;
  if (best_f < out.before) {
    StateVector trial = state;
    trial.apply_unchecked(gate_from_params(best_x), bond);
    const double s = bond_entropy(trial, bond, alpha);
    if (s < out.before) {
      state = std::move(trial);
      out.after = s;
      out.applied = true;
    }
  }
  return out;
}

HaarGame::HaarGame(StateVector initial, OptimizerConfig optimizer)
    : state_(std::move(initial)), optimizer_(optimizer) {
  optimizer_.validate();
  if (state_.qubits() < 2) throw ConfigError("haar game needs at least 2 qubits");
  entropy_.assign(state_.qubits() + 1, 0.0);
  const auto inner = entropy_profile(state_, optimizer_.renyi_order);
  std::copy(inner.begin(), inner.end(), entropy_.begin() + 1);
}

void HaarGame::update(const ScheduleStep& step, Rng& rng) {
  if (step.player == Player::entangler) {
    state_.apply_unchecked(sample_haar_u4(rng), step.bond);
    entropy_[step.bond] = bond_entropy(state_, step.bond, optimizer_.renyi_order);
  } else {
    const DisentangleResult r = minimize_bond_entropy(state_, step.bond, optimizer_, rng);
    entropy_[step.bond] = r.after;
    if (r.hit_cap) ++cap_hits_;
  }
}

HaarGame make_haar_game(const GameConfig& cfg, uint64_t seed) {
  if (cfg.initial == InitialState::haar_random) {
    Rng rng(seed);
    return HaarGame(StateVector::haar_random(cfg.L, rng), cfg.optimizer);
  }
  return HaarGame(StateVector(cfg.L), cfg.optimizer);
}

double haar_disentangled_threshold(std::size_t qubits) {
  return 1e-3 * static_cast<double>(qubits) / std::numbers::ln2;
}

HaarDisentangleOutcome haar_disentangle_experiment(std::size_t qubits, std::size_t n_e,
                                                   Rng& rng, const OptimizerConfig& cfg,
                                                   std::size_t max_probes) {
  if (qubits < 2) throw ConfigError("disentangling experiment needs L >= 2");
  StateVector state(qubits);
  const std::size_t bonds = qubits - 1;
  for (std::size_t k = 0; k < n_e; ++k) {
    state.apply_unchecked(sample_haar_u4(rng), 1 + rng.below(bonds));
  }
  std::vector<double> entropy = entropy_profile(state, cfg.renyi_order);
  const double threshold = haar_disentangled_threshold(qubits);
  HaarDisentangleOutcome out;
  while (std::accumulate(entropy.begin(), entropy.end(), 0.0) >= threshold) {
    if (out.n_d >= max_probes) {
      out.censored = true;
      break;
    }
    ++out.n_d;
    const std::size_t bond = 1 + rng.below(bonds);
    entropy[bond - 1] = minimize_bond_entropy(state, bond, cfg, rng).after;
  }
  return out;
}

}  // namespace ucg
