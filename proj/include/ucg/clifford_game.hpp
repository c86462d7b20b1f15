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
#include <vector>

#include "ucg/clifford.hpp"
#include "ucg/game.hpp"
#include "ucg/rng.hpp"
#include "ucg/tableau.hpp"

namespace ucg {

/// Tableau with its bond entropies S_0..S_L kept up to date (S_0 = S_L = 0).
struct CliffordState {
  StabilizerTableau tableau;
  std::vector<int> entropy;

  explicit CliffordState(StabilizerTableau t);
  static CliffordState product(std::size_t qubits) {
    return CliffordState(StabilizerTableau::product_state(qubits));
  }
  std::size_t qubits() const noexcept { return tableau.qubits(); }
  int total_entropy() const noexcept;

  /// Applies `gate` on bond x and refreshes S_x (the only entropy it can change).
  void apply(const CliffordGate2& gate, std::size_t bond);
};

/// Reduces S_x as far as any two-qubit Clifford on (x, x+1) can and returns
/// the reduction. Nothing is applied if S_x is below both neighbours or no
/// gate lowers it.
int maximally_disentangle_bond(CliffordState& state, std::size_t bond,
                               DisentanglerStrategy strategy, Rng& rng);

/// Best achievable reduction of S_x by exhaustive search over all 11520 gates.
int exhaustive_best_reduction(const StabilizerTableau& tableau, std::size_t bond);

class CliffordGame {
 public:
  CliffordGame(std::size_t qubits, DisentanglerStrategy strategy)
      : state_(CliffordState::product(qubits)), strategy_(strategy) {}

  std::size_t bond_count() const noexcept { return state_.qubits() - 1; }
  void update(const ScheduleStep& step, Rng& rng);
  std::vector<double> profile() const;
  double half_chain() const { return state_.entropy[state_.qubits() / 2]; }
  const CliffordState& state() const noexcept { return state_; }

 private:
  CliffordState state_;
  DisentanglerStrategy strategy_;
};

CliffordGame make_clifford_game(const GameConfig& cfg);

/// Counts disentangling attempts on uniformly random bonds needed to bring a
/// state made by `n_e` random gates on random bonds back to zero entropy.
/// Throws CapExceeded after 1000 L^2 attempts.
std::size_t clifford_disentangle_experiment(std::size_t qubits, std::size_t n_e, Rng& rng,
                                            DisentanglerStrategy strategy =
                                                DisentanglerStrategy::ordered_19);

}  // namespace ucg
