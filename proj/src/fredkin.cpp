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

#include "ucg/fredkin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ucg/errors.hpp"

namespace ucg {

FredkinChain::FredkinChain(std::vector<uint8_t> occupations, double c) : c_(c) {
  if (!(c > 0.0 && c < 1.0)) throw ConfigError("fredkin c must lie in (0, 1)");
  const std::size_t L = occupations.size();
  if (L < 4 || L % 2 != 0) throw ConfigError("fredkin chain needs even L >= 4");
  z_.assign(L + 1, 0);
  h_.assign(L + 1, 0);
  for (std::size_t i = 1; i <= L; ++i) {
    const uint8_t zi = occupations[i - 1];
    if (zi > 1) throw ConfigError("occupations must be 0 or 1");
    z_[i] = zi;
    h_[i] = h_[i - 1] + (zi ? 1 : -1);
    if (h_[i] < 0) throw ConfigError("occupations are not a Dyck path (h < 0)");
  }
  if (h_[L] != 0) throw ConfigError("occupations are not half filled");

  class_rate_ = {2.0 * (1.0 - c), 2.0 * c, 1.0 - c, c};
  class_of_.assign(L + 1, kNone);
  slot_of_.assign(L + 1, 0);
  for (std::size_t i = 2; i + 2 <= L; ++i) set_class(i, classify(i));
  integral_.assign(L + 1, 0.0);
  last_change_.assign(L + 1, 0.0);
}

FredkinChain FredkinChain::zigzag(std::size_t L, double c) {
  std::vector<uint8_t> z(L);
  for (std::size_t i = 0; i < L; ++i) z[i] = (i % 2 == 0) ? 1 : 0;
  return FredkinChain(std::move(z), c);
}

FredkinChain::RateClass FredkinChain::classify(std::size_t i) const {
  const std::size_t L = size();
  if (i < 2 || i + 2 > L) return kNone;
  const uint8_t a = z_[i - 1], b = z_[i], cc = z_[i + 1], d = z_[i + 2];
  if (b == cc) return kNone;
  const bool lowering = (b == 1);  // "10" -> "01"
  if (a == 1 && d == 0) return lowering ? kDown2 : kUp2;
  if (a == 1 && d == 1) return lowering ? kDown1 : kUp1;
  if (a == 0 && d == 0) return lowering ? kDown1 : kUp1;
  return kNone;  // 0101 <-> 0011
}

void FredkinChain::set_class(std::size_t i, RateClass cls) {
  const int8_t old = class_of_[i];
  if (old == cls) return;
  if (old != kNone) {
    auto& bucket = members_[old];
    const std::size_t slot = slot_of_[i];
    bucket[slot] = bucket.back();
    slot_of_[bucket[slot]] = slot;
    bucket.pop_back();
  }
  if (cls != kNone) {
    slot_of_[i] = members_[cls].size();
    members_[cls].push_back(i);
  }
  class_of_[i] = cls;
}

void FredkinChain::refresh(std::size_t i) {
  if (i >= 2 && i + 2 <= size()) set_class(i, classify(i));
}

double FredkinChain::total_rate() const noexcept {
  double total = 0.0;
  for (int k = 0; k < 4; ++k) total += class_rate_[k] * static_cast<double>(members_[k].size());
  return total;
}

double FredkinChain::pair_rate(std::size_t i) const {
  const RateClass cls = classify(i);
  return cls == kNone ? 0.0 : class_rate_[cls];
}

FredkinChain::Event FredkinChain::step(Rng& rng) {
  const double total = total_rate();
  if (!(total > 0.0)) throw std::logic_error("fredkin chain has no enabled move");
  const double dwell = rng.exponential(total);
  time_ += dwell;

  double u = rng.uniform() * total;
  int cls = 0;
  for (; cls < 3; ++cls) {
    const double weight = class_rate_[cls] * static_cast<double>(members_[cls].size());
    if (u < weight) break;
    u -= weight;
  }
  while (members_[cls].empty()) --cls;  // rounding at the upper edge
  const auto& bucket = members_[cls];
  const std::size_t i = bucket[rng.below(bucket.size())];

  integral_[i] += h_[i] * (time_ - last_change_[i]);
  last_change_[i] = time_;
  std::swap(z_[i], z_[i + 1]);
  h_[i] = h_[i - 1] + (z_[i] ? 1 : -1);
  for (std::size_t j = (i >= 2 ? i - 2 : 0); j <= i + 2; ++j) refresh(j);
  return {i, dwell};
}

std::vector<int> FredkinChain::heights() const {
  return {h_.begin() + 1, h_.end()};
}

std::vector<double> FredkinChain::integrated_profile() const {
  const std::size_t L = size();
  std::vector<double> out(L - 1);
  for (std::size_t n = 1; n < L; ++n) {
    out[n - 1] = integral_[n] + h_[n] * (time_ - last_change_[n]);
  }
  return out;
}

void FredkinChain::reset_integrals() {
  integral_.assign(integral_.size(), 0.0);
  last_change_.assign(last_change_.size(), time_);
}

double fredkin_profile(double x, double L) {
  if (x <= 0.0 || x >= L) return 0.0;
  return 4.0 / std::sqrt(2.0 * std::numbers::pi) * std::sqrt(x * (L - x) / L);
}

double correlation_length(double c) {
  if (!(c > 0.0 && c < 1.0)) throw std::domain_error("c must lie in (0, 1)");
  if (c == 0.5) throw std::domain_error("correlation length diverges at c = 1/2");
  return std::abs(1.0 / std::log(c / (1.0 - c)));
}


std::vector<uint8_t> sample_dyck_path(std::size_t L, Rng& rng) {
  if (L % 2 != 0) throw ConfigError("Dyck paths need even length");
  const std::size_t n = L / 2;
  // n ups and n + 1 downs: exactly one rotation keeps every proper prefix
  // non-negative, and it ends with a down step.
  std::vector<uint8_t> seq(2 * n + 1, 0);
  std::fill(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(n), uint8_t{1});
  for (std::size_t i = seq.size() - 1; i > 0; --i) std::swap(seq[i], seq[rng.below(i + 1)]);
  int h = 0, low = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    h += seq[i] ? 1 : -1;
    if (h < low) {
      low = h;
      start = i + 1;
    }
  }
  std::vector<uint8_t> path(L);
  for (std::size_t i = 0; i < L; ++i) path[i] = seq[(start + i) % seq.size()];
  return path;
}

TrajectoryRecord run_fredkin_trajectory(const GameConfig& cfg, uint64_t seed, std::size_t index) {
  cfg.validate();
  TrajectoryRecord record;
  record.config = cfg;
  record.trajectory_index = index;
  record.seed = seed;

  Rng rng(seed);
  FredkinChain chain = FredkinChain::zigzag(cfg.L, cfg.p);
  const std::size_t L = cfg.L;
  const std::vector<std::size_t> growth = growth_times(cfg);
  std::vector<double> samples(growth.begin(), growth.end());
  for (std::size_t t = cfg.t_burn + cfg.measure_every; t <= cfg.t_burn + cfg.t_measure;
       t += cfg.measure_every) {
    samples.push_back(static_cast<double>(t));
  }

  auto emit = [&](double t, std::vector<int> h) {
    MeasurementRow row;
    row.t = t;
    row.steady = t > static_cast<double>(cfg.t_burn);
    row.profile.assign(h.begin() + 1, h.end() - 1);
    row.s_half = static_cast<double>(h[L / 2]);
    if (!row.steady && !cfg.keep_growth_profiles) row.profile.clear();
    record.rows.push_back(std::move(row));
  };

  std::size_t next = 0;
  while (next < samples.size()) {
    const FredkinChain::Event ev = chain.step(rng);
    if (chain.time() <= samples[next]) continue;
    // The move happened after the sample time: undo it in the copy.
    std::vector<int> h(L + 1, 0);
    const auto& z = chain.occupations();
    for (std::size_t n = 1; n <= L; ++n) h[n] = chain.height(n);
    h[ev.pair] = h[ev.pair - 1] + (z[ev.pair + 1] ? 1 : -1);
    while (next < samples.size() && chain.time() > samples[next]) emit(samples[next++], h);
  }
  compute_w_contributions(record);
  if (!cfg.keep_profiles) {
    for (auto& row : record.rows)
      if (row.steady) row.profile.clear();
  }
  return record;
}

std::vector<TrajectoryRecord> run_fredkin_ensemble(const GameConfig& cfg, unsigned threads) {
  cfg.validate();
  return parallel_map<TrajectoryRecord>(cfg.n_trajectories, resolve_threads(threads),
                                        [&](std::size_t i) {
                                          return run_fredkin_trajectory(
                                              cfg, spawn_trajectory_seed(cfg.master_seed, i), i);
                                        });
}

}  // namespace ucg
