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

#include "ucg/clifford_game.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "ucg/errors.hpp"

namespace ucg {

CliffordState::CliffordState(StabilizerTableau t) : tableau(std::move(t)) {
  entropy.assign(tableau.qubits() + 1, 0);
  const std::vector<int> inner = entropy_profile_rank(tableau);
  std::copy(inner.begin(), inner.end(), entropy.begin() + 1);
}

int CliffordState::total_entropy() const noexcept {
  return std::accumulate(entropy.begin(), entropy.end(), 0);
}

void CliffordState::apply(const CliffordGate2& gate, std::size_t bond) {
  const BondAnalysis a = analyze_bond(tableau, bond);
  tableau.apply(gate, bond);
  entropy[bond] = a.entropy_after(gate);
  assert(entropy[bond] == entropy_cut(tableau, bond));
}

int maximally_disentangle_bond(CliffordState& state, std::size_t bond,
                               DisentanglerStrategy strategy, Rng& rng) {
  const int s = state.entropy.at(bond);
  if (s < std::min(state.entropy[bond - 1], state.entropy.at(bond + 1))) return 0;
  if (s == 0) return 0;

  const BondAnalysis a = analyze_bond(state.tableau, bond);
  const CliffordGate2* chosen = nullptr;
  int best = s;

  if (strategy == DisentanglerStrategy::random_full) {
    const auto& reps = symplectic_group();
    std::vector<std::size_t> optimal;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const int after = a.entropy_after(reps[k]);
      if (after < best) {
        best = after;
        optimal.clear();
      }
      if (after == best && best < s) optimal.push_back(k);
    }
    if (optimal.empty()) return 0;
    const std::size_t rep = optimal[rng.below(optimal.size())];
    chosen = &clifford_group()[16 * rep + rng.below(16)];
  } else {
    const auto& set = disentangler_set();
    std::vector<std::size_t> optimal;
    for (std::size_t k = 0; k < set.size(); ++k) {
      const int after = a.entropy_after(set[k]);
      if (after < best) {
        best = after;
        optimal.clear();
      }
      if (after == best && best < s) optimal.push_back(k);
    }
    if (optimal.empty()) return 0;
    const std::size_t pick = strategy == DisentanglerStrategy::ordered_19
                                 ? optimal.front()
                                 : optimal[rng.below(optimal.size())];
    chosen = &set[pick];
  }

  state.tableau.apply(*chosen, bond);
  state.entropy[bond] = best;
  assert(best == entropy_cut(state.tableau, bond));
  return s - best;
}

int exhaustive_best_reduction(const StabilizerTableau& tableau, std::size_t bond) {
  const int before = entropy_cut(tableau, bond);
  int best = before;
  for (const CliffordGate2& g : clifford_group()) {
    StabilizerTableau t = tableau;
    t.apply(g, bond);
    best = std::min(best, entropy_cut(t, bond));
  }
  return before - best;
}

void CliffordGame::update(const ScheduleStep& step, Rng& rng) {
  if (step.player == Player::entangler) {
    state_.apply(sample_random_clifford2(rng), step.bond);
  } else {
    maximally_disentangle_bond(state_, step.bond, strategy_, rng);
  }
}

std::vector<double> CliffordGame::profile() const {
  return {state_.entropy.begin() + 1, state_.entropy.end() - 1};
}

CliffordGame make_clifford_game(const GameConfig& cfg) {
  if (cfg.initial != InitialState::flat) {
    throw ConfigError("clifford games start from the product state");
  }
  return CliffordGame(cfg.L, cfg.strategy);
}

std::size_t clifford_disentangle_experiment(std::size_t qubits, std::size_t n_e, Rng& rng,
                                            DisentanglerStrategy strategy) {
  if (qubits < 2) throw ConfigError("disentangling experiment needs L >= 2");
  CliffordState state = CliffordState::product(qubits);
  const std::size_t bonds = qubits - 1;
  for (std::size_t k = 0; k < n_e; ++k) {
    state.apply(sample_random_clifford2(rng), 1 + rng.below(bonds));
  }
  const std::size_t cap = 1000 * qubits * qubits;
  std::size_t attempts = 0;
  while (state.total_entropy() > 0) {
    if (attempts >= cap) throw CapExceeded("disentangling did not finish within 1000 L^2 attempts");
    ++attempts;
    maximally_disentangle_bond(state, 1 + rng.below(bonds), strategy, rng);
  }
  return attempts;
}

}  // namespace ucg
