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

#include <filesystem>
#include <map>

#include "acceptance.hpp"
#include "ucg/analysis.hpp"
#include "ucg/classical.hpp"
#include "ucg/clifford_game.hpp"
#include "ucg/fredkin.hpp"
#include "ucg/haar_game.hpp"
#include "ucg/io.hpp"

namespace {

using namespace ucg;
using acceptance::format;
using acceptance::Outcome;

std::vector<std::string> enumerate_dyck(std::size_t L) {
  std::vector<std::string> out;
  for (uint32_t bits = 0; bits < (1u << L); ++bits) {
    std::string s;
    int h = 0;
    bool ok = true;
    for (std::size_t i = 0; i < L && ok; ++i) {
      const bool up = (bits >> (L - 1 - i)) & 1u;
      h += up ? 1 : -1;
      ok = h >= 0;
      s += up ? '1' : '0';
    }
    if (ok && h == 0) out.push_back(s);
  }
  return out;
}

UCG_CRITERION(fredkin_agreement,
              "c=1/2 mean h_{L/2} within 5% of the continuum profile at L=128; L=6 TV < 0.02") {
  std::string detail = "h_{L/2} / continuum:";
  double ratio128 = 0.0;
  for (std::size_t L : {32, 64, 128}) {
    // Stationary starts (uniform Dyck paths), evolved for L^2 time units
    // and time averaged.
    const std::size_t trajectories = 400;
    const double T = static_cast<double>(L * L);
    const auto means = parallel_map<double>(trajectories, resolve_threads(0), [&](std::size_t i) {
      Rng rng(spawn_trajectory_seed(0xf4ed + L, i));
      FredkinChain chain(sample_dyck_path(L, rng), 0.5);
      double last = 0.0, h_mid = chain.height(L / 2), acc = 0.0;
      while (chain.time() < T) {
        chain.step(rng);
        const double now = std::min(chain.time(), T);
        acc += h_mid * (now - last);
        last = now;
        h_mid = chain.height(L / 2);
      }
      return acc / T;
    });
    const auto m = acceptance::mean_se(means);
    const double ratio = m.mean / fredkin_profile(L / 2.0, static_cast<double>(L));
    detail += format(" L=%zu %.4f(%.4f)", L, ratio, m.se / fredkin_profile(L / 2.0, double(L)));
    if (L == 128) ratio128 = ratio;
  }

  // L = 6: dwell-time weighted occupation against the exact uniform law.
  const auto paths = enumerate_dyck(6);
  FredkinChain chain = FredkinChain::zigzag(6, 0.5);
  Rng rng(0xf4ee);
  for (int k = 0; k < 1000; ++k) chain.step(rng);
  std::map<std::string, double> dwell;
  double total = 0.0;
  for (int k = 0; k < 500000; ++k) {
    std::string state;
    for (std::size_t i = 1; i <= 6; ++i) state += chain.occupations()[i] ? '1' : '0';
    const auto ev = chain.step(rng);
    dwell[state] += ev.dwell;
    total += ev.dwell;
  }
  double tv = 0.0;
  for (const auto& p : paths) tv += 0.5 * std::abs(dwell[p] / total - 1.0 / paths.size());
  detail += format("; L=6 TV = %.4f over %zu paths", tv, paths.size());
  return {std::abs(ratio128 - 1.0) <= 0.05 && tv < 0.02, detail};
}

OptimizerConfig desk_optimizer() {
  OptimizerConfig o;
  o.n_starts = 2;
  o.max_iterations = 200;
  o.max_restarts = 0;
  o.f_tolerance = 1e-8;
  o.x_tolerance = 1e-4;
  o.entropy_threshold = 1e-6;
  return o;
}

UCG_CRITERION(haar_harmonic_law,
              "n_d/(L-1) follows H_{n_e} within 10% for n_e <= L/2, L in {8,10,12}") {
  OptimizerConfig opt;
  opt.entropy_threshold = 1e-6;
  std::string detail;
  bool ok = true;
  uint64_t job = 0;
  for (std::size_t L : {8, 10, 12}) {
    const std::size_t runs = L == 12 ? 150 : 400;
    // Least-squares slope through the origin of n_d/(L-1) against H_{n_e}.
    double sxy = 0.0, sxx = 0.0;
    detail += format("L=%zu:", L);
    for (std::size_t n_e = 1; n_e <= L / 2; ++n_e) {
      const auto nd = parallel_map<double>(runs, resolve_threads(0), [&](std::size_t r) {
        Rng rng(spawn_trajectory_seed(0x4a7 + job, r));
        const auto out = haar_disentangle_experiment(L, n_e, rng, opt, 1000 * L * L);
        return static_cast<double>(out.n_d);
      });
      ++job;
      const auto m = acceptance::mean_se(nd);
      const double y = m.mean / static_cast<double>(L - 1);
      const double h = harmonic_number(n_e);
      sxy += y * h;
      sxx += h * h;
      detail += format(" %zu:%.3f/%.3f", n_e, y, h);
    }
    const double slope = sxy / sxx;
    ok &= std::abs(slope - 1.0) <= 0.10;
    detail += format(" slope=%.3f; ", slope);
  }
  return {ok, detail};
}

struct HaarSteady {
  acceptance::MeanSe s_over_L;
  std::size_t cap_hits = 0;
};

HaarSteady haar_steady(std::size_t L, InitialState init, uint64_t seed, std::size_t trajectories,
                       std::size_t t_burn, std::size_t t_measure) {
  GameConfig cfg;
  cfg.model = ModelKind::haar;
  cfg.L = L;
  cfg.p = 0.6;
  cfg.master_seed = seed;
  cfg.n_trajectories = trajectories;
  cfg.initial = init;
  cfg.optimizer = desk_optimizer();
  cfg.t_burn = t_burn;
  cfg.t_measure = t_measure;
  cfg.measure_every = 2;
  const auto records = run_ensemble(
      cfg, [](const GameConfig& c, uint64_t s) { return make_haar_game(c, s); });
  std::vector<double> per_traj;
  HaarSteady out;
  for (const auto& r : records) {
    double s = 0.0;
    std::size_t n = 0;
    for (const auto& row : r.rows) {
      if (!row.steady) continue;
      s += row.s_half;
      ++n;
    }
    per_traj.push_back(s / static_cast<double>(n) / static_cast<double>(L));
    out.cap_hits += r.cap_hits;
  }
  out.s_over_L = acceptance::mean_se(per_traj);
  return out;
}

UCG_CRITERION(haar_no_transition,
              "p=0.6: S_{L/2}/L non-decreasing in L=8,10,12; product vs random start agree (L=10)") {
  // Entanglement relaxes over a few hundred steps from either start, so every
  // cell gets a long burn-in. One L=12 step costs seconds; it gets two runs.
  const auto product8 = haar_steady(8, InitialState::flat, 0x4a88, 8, 300, 100).s_over_L;
  const auto product10 = haar_steady(10, InitialState::flat, 0x4a90, 4, 300, 100).s_over_L;
  const auto random10 = haar_steady(10, InitialState::haar_random, 0x4a91, 4, 300, 100).s_over_L;
  const auto product12 = haar_steady(12, InitialState::flat, 0x4a8c, 2, 200, 50).s_over_L;
  const std::vector<acceptance::MeanSe> s = {product8, product10, product12};
  std::string detail = "S/L:";
  bool monotone = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    detail += format(" L=%d %.4f(%.4f)", 8 + 2 * static_cast<int>(i), s[i].mean, s[i].se);
    // Non-decreasing up to two combined standard errors of noise.
    if (i > 0) monotone &= s[i].mean >= s[i - 1].mean - 2.0 * std::hypot(s[i - 1].se, s[i].se);
  }
  const double z = std::abs(product10.mean - random10.mean) / std::hypot(product10.se, random10.se);
  detail += format("; L=10 product %.4f vs random %.4f, z = %.2f", product10.mean, random10.mean, z);
  return {monotone && z <= 2.0, detail};
}

UCG_CRITERION(haar_disentangle_hardness,
              "n_e=2L: disentangling time grows faster than a power of L (AIC), L in {4,6,8}") {
  OptimizerConfig opt;
  opt.entropy_threshold = 1e-6;
  std::vector<double> Ls, nds;
  std::string detail = "mean n_d:";
  uint64_t job = 0;
  for (std::size_t L : {4, 6, 8}) {
    const std::size_t runs = L == 8 ? 8 : 24;
    std::size_t censored = 0;
    const auto out = parallel_map<HaarDisentangleOutcome>(
        runs, resolve_threads(0), [&](std::size_t r) {
          Rng rng(spawn_trajectory_seed(0x4ad0 + job, r));
          return haar_disentangle_experiment(L, 2 * L, rng, opt, 1000 * L * L);
        });
    ++job;
    std::vector<double> v;
    for (const auto& o : out) {
      v.push_back(static_cast<double>(o.n_d));
      censored += o.censored;
    }
    const auto m = acceptance::mean_se(v);
    Ls.push_back(static_cast<double>(L));
    nds.push_back(m.mean);
    detail += format(" L=%zu %.1f(%.1f, %zu censored)", L, m.mean, m.se, censored);
  }
  const auto cmp = compare_growth_models(Ls, nds);
  detail += format("; AIC exp %.2f vs power %.2f", cmp.aic_exponential, cmp.aic_power);
  return {cmp.exponential_preferred(), detail};
}

template <class Make>
std::vector<std::string> exported_bytes(const GameConfig& cfg, Make make, unsigned threads,
                                        const std::filesystem::path& dir) {
  std::filesystem::remove_all(dir);
  const auto records = run_ensemble(cfg, make, threads);
  const auto cell = export_cell(dir, records);
  std::vector<std::string> out;
  for (const char* name : {"traj_0000.csv", "traj_0001.csv", "traj_0002.csv", "aggregate.csv",
                           "meta.json"}) {
    out.push_back(read_file(cell / name));
  }
  std::filesystem::remove_all(dir);
  return out;
}

UCG_CRITERION(determinism, "identical config and seed give byte-identical outputs") {
  const auto base = std::filesystem::temp_directory_path() / "ucg_acceptance_determinism";
  GameConfig cfg;
  cfg.n_trajectories = 3;
  cfg.t_burn = 40;
  cfg.growth_every = 5;
  cfg.keep_growth_profiles = true;
  cfg.t_measure = 40;
  cfg.measure_every = 4;
  cfg.master_seed = 2024;
  std::string detail;
  bool ok = true;

  auto compare = [&](const char* label, const GameConfig& c, auto make) {
    const auto a = exported_bytes(c, make, 1, base / "a");
    const auto b = exported_bytes(c, make, 3, base / "b");
    const auto again = exported_bytes(c, make, 1, base / "c");
    const bool same = a == b && a == again;
    ok &= same;
    detail += format("%s %s; ", label, same ? "identical" : "DIFFERENT");
  };

  cfg.model = ModelKind::classical;
  cfg.L = 32;
  cfg.p = 0.45;
  compare("classical", cfg, [](const GameConfig& c, uint64_t) { return make_classical_game(c); });
  cfg.model = ModelKind::clifford;
  cfg.L = 16;
  cfg.p = 0.38;
  cfg.strategy = DisentanglerStrategy::random_full;
  compare("clifford", cfg, [](const GameConfig& c, uint64_t) { return make_clifford_game(c); });
  cfg.model = ModelKind::haar;
  cfg.L = 6;
  cfg.p = 0.6;
  cfg.t_burn = 10;
  cfg.t_measure = 10;
  cfg.measure_every = 2;
  cfg.initial = InitialState::haar_random;
  cfg.optimizer = desk_optimizer();
  compare("haar", cfg, [](const GameConfig& c, uint64_t s) { return make_haar_game(c, s); });

  GameConfig fk;
  fk.model = ModelKind::fredkin;
  fk.L = 32;
  fk.p = 0.4;
  fk.n_trajectories = 3;
  fk.t_burn = 50;
  fk.t_measure = 50;
  fk.measure_every = 5;
  fk.master_seed = 2025;
  auto fredkin_bytes = [&](unsigned threads) {
    const auto dir = base / "f";
    std::filesystem::remove_all(dir);
    const auto cell = export_cell(dir, run_fredkin_ensemble(fk, threads));
    std::string all = read_file(cell / "aggregate.csv") + read_file(cell / "traj_0002.csv");
    std::filesystem::remove_all(dir);
    return all;
  };
  const bool fredkin_same = fredkin_bytes(1) == fredkin_bytes(3);
  ok &= fredkin_same;
  detail += format("fredkin %s; ", fredkin_same ? "identical" : "DIFFERENT");

  auto bench = [](unsigned threads) {
    return parallel_map<std::size_t>(64, threads, [](std::size_t i) {
      Rng rng(spawn_trajectory_seed(77, i));
      return clifford_disentangle_experiment(8, 12, rng);
    });
  };
  const bool bench_same = bench(1) == bench(4);
  ok &= bench_same;
  detail += format("disentangle bench %s", bench_same ? "identical" : "DIFFERENT");
  return {ok, detail};
}

}  // namespace
