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

// Command-line front end: runs sweeps, exports cells, analyzes them.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ucg/analysis.hpp"
#include "ucg/classical.hpp"
#include "ucg/clifford_game.hpp"
#include "ucg/errors.hpp"
#include "ucg/fredkin.hpp"
#include "ucg/haar_game.hpp"
#include "ucg/io.hpp"

namespace {

using namespace ucg;
using nlohmann::json;

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kCap = 3, kIo = 4 };

struct RunOptions {
  std::string config_path;
  std::vector<std::size_t> L;
  std::vector<double> p;
  std::optional<uint64_t> seed;
  std::optional<std::size_t> trajectories, t_burn, t_measure, measure_every, growth_every,
      growth_per_decade;
  std::optional<std::string> out, strategy, initial;
  std::optional<double> renyi_order;
  std::optional<int> n_starts, max_iterations;
  unsigned threads = 0;
};

void add_run_flags(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--L", o.L, "system size(s), comma separated")->delimiter(',');
  cmd->add_option("--p", o.p, "disentangler probability (or c), comma separated")
      ->delimiter(',');
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--trajectories", o.trajectories, "trajectories per cell");
  cmd->add_option("--t-burn", o.t_burn, "burn-in time steps (default: model heuristic)");
  cmd->add_option("--t-measure", o.t_measure, "measured time steps");
  cmd->add_option("--measure-every", o.measure_every, "steps between steady-state rows");
  cmd->add_option("--growth-every", o.growth_every, "steps between burn-in rows");
  cmd->add_option("--growth-per-decade", o.growth_per_decade, "log-spaced burn-in rows");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--strategy", o.strategy, "ordered_19 | random_19 | random_full");
  cmd->add_option("--initial", o.initial, "flat | pyramid | haar_random");
  cmd->add_option("--renyi-order", o.renyi_order, "Renyi index of recorded entropies");
  cmd->add_option("--n-starts", o.n_starts, "optimizer starts per bond");
  cmd->add_option("--max-iterations", o.max_iterations, "optimizer iteration cap");
  cmd->add_option("--threads", o.threads, "worker threads (0: CIRCUIT_GAME_THREADS or all)");
}

json load_config_doc(const std::string& path) {
  if (path.empty()) return json::object();
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
}

ExperimentManifest build_manifest(ModelKind model, const RunOptions& o) {
  json doc = load_config_doc(o.config_path);
  if (doc.contains("model") && parse_model(doc["model"].get<std::string>()) != model) {
    throw ConfigError("config model does not match the subcommand");
  }
  const bool burn_given = doc.contains("t_burn") || o.t_burn;
  const bool spacing_given = doc.contains("measure_every") || o.measure_every;
  GameConfig base;
  base.model = model;
  base.keep_profiles = true;
  base.keep_growth_profiles = true;
  base.t_measure = 100;
  if (model == ModelKind::haar) base.L = 10;
  ExperimentManifest m = manifest_from_json(doc, base);
  if (!o.L.empty() || !o.p.empty()) {
    std::vector<double> ps;
    std::vector<std::size_t> Ls;
    std::set<double> seen_p;
    std::set<std::size_t> seen_L;
    for (const auto& c : m.cells) {
      if (seen_p.insert(c.p).second) ps.push_back(c.p);
      if (seen_L.insert(c.L).second) Ls.push_back(c.L);
    }
    if (!o.p.empty()) ps = o.p;
    if (!o.L.empty()) Ls = o.L;
    m = make_manifest(m.cells.front(), ps, Ls, m.out_dir);
  }
  for (auto& c : m.cells) {
    c.model = model;
    c.keep_profiles = true;
    c.keep_growth_profiles = true;
    if (o.seed) c.master_seed = *o.seed;
    if (o.trajectories) c.n_trajectories = *o.trajectories;
    if (o.t_burn) c.t_burn = *o.t_burn;
    if (o.t_measure) c.t_measure = *o.t_measure;
    if (o.measure_every) c.measure_every = *o.measure_every;
    if (o.growth_every) c.growth_every = *o.growth_every;
    if (o.growth_per_decade) c.growth_points_per_decade = *o.growth_per_decade;
    if (o.strategy) c.strategy = parse_strategy(*o.strategy);
    if (o.initial) c.initial = parse_initial_state(*o.initial);
    if (o.renyi_order) c.optimizer.renyi_order = *o.renyi_order;
    if (o.n_starts) c.optimizer.n_starts = *o.n_starts;
    if (o.max_iterations) c.optimizer.max_iterations = *o.max_iterations;
    if (!burn_given) c.t_burn = default_burn_in(model, c.L, c.p);
    if (!spacing_given) c.measure_every = std::min(c.measure_every, c.t_measure);
    if (c.measure_every > c.t_measure) throw ConfigError("measure_every exceeds t_measure");
    c.validate();
  }
  if (o.out) m.out_dir = *o.out;
  return m;
}

std::vector<TrajectoryRecord> run_cell(const GameConfig& cfg, unsigned threads) {
  switch (cfg.model) {
    case ModelKind::classical:
      return run_ensemble(
          cfg, [](const GameConfig& c, uint64_t) { return make_classical_game(c); }, threads);
    case ModelKind::clifford:
      return run_ensemble(
          cfg, [](const GameConfig& c, uint64_t) { return make_clifford_game(c); }, threads);
    case ModelKind::haar:
      return run_ensemble(
          cfg, [](const GameConfig& c, uint64_t s) { return make_haar_game(c, s); }, threads);
    case ModelKind::fredkin:
      return run_fredkin_ensemble(cfg, threads);
  }
  throw ConfigError("unknown model");
}

double steady_mean_w(const std::vector<TrajectoryRecord>& records) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    for (const auto& row : r.rows) {
      if (!row.steady) continue;
      sum += row.w;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

double steady_mean_s(const std::vector<TrajectoryRecord>& records) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    for (const auto& row : r.rows) {
      if (!row.steady) continue;
      sum += row.s_half;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

int run_command(ModelKind model, const RunOptions& o) {
  const ExperimentManifest m = build_manifest(model, o);
  for (const auto& cell : m.cells) {
    const auto records = run_cell(cell, o.threads);
    const auto dir = export_cell(m.out_dir, records);
    std::size_t caps = 0;
    for (const auto& r : records) caps += r.cap_hits;
    std::printf("%s L=%zu %s=%g trajectories=%zu S_half=%.6g W=%.6g cap_hits=%zu -> %s\n",
                std::string(to_string(model)).c_str(), cell.L,
                model == ModelKind::fredkin ? "c" : "p", cell.p, records.size(),
                steady_mean_s(records), steady_mean_w(records), caps, dir.string().c_str());
  }
  return kOk;
}

struct BenchOptions {
  std::string model = "clifford";
  std::vector<std::size_t> L{8};
  std::vector<std::size_t> n_e{1, 2, 4};
  std::size_t runs = 100;
  uint64_t seed = 1;
  std::string strategy = "ordered_19";
  std::size_t max_probes = 0;
  std::string out;
  int n_starts = 8;
  int max_iterations = 400;
  unsigned threads = 0;
};

int bench_command(const BenchOptions& o) {
  const ModelKind model = parse_model(o.model);
  if (model != ModelKind::clifford && model != ModelKind::haar) {
    throw ConfigError("disentangle-bench supports clifford and haar");
  }
  const DisentanglerStrategy strategy = parse_strategy(o.strategy);
  OptimizerConfig opt;
  opt.n_starts = o.n_starts;
  opt.max_iterations = o.max_iterations;
  opt.validate();
  struct Job {
    std::size_t L, n_e, run;
  };
  std::vector<Job> jobs;
  for (std::size_t L : o.L) {
    if (L < 2) throw ConfigError("L must be >= 2");
    if (model == ModelKind::haar && L > StateVector::kMaxQubits) {
      throw ConfigError("haar model supports at most 16 qubits");
    }
    for (std::size_t ne : o.n_e)
      for (std::size_t r = 0; r < o.runs; ++r) jobs.push_back({L, ne, r});
  }
  struct Outcome {
    std::size_t n_d;
    bool censored;
  };
  const auto results = parallel_map<Outcome>(
      jobs.size(), resolve_threads(o.threads), [&](std::size_t i) -> Outcome {
        Rng rng(spawn_trajectory_seed(o.seed, i));
        const Job& j = jobs[i];
        if (model == ModelKind::clifford) {
          return {clifford_disentangle_experiment(j.L, j.n_e, rng, strategy), false};
        }
        const std::size_t cap = o.max_probes ? o.max_probes : 1000 * j.L * j.L;
        const auto out = haar_disentangle_experiment(j.L, j.n_e, rng, opt, cap);
        return {out.n_d, out.censored};
      });
  GameConfig tag;
  tag.model = model;
  tag.master_seed = o.seed;
  tag.strategy = strategy;
  tag.optimizer = opt;
  std::string csv = "# format=" + std::string(kFormatTag) + " config_hash=" + config_hash(tag) +
                    " model=" + o.model + "\nL,n_e,run,n_d,censored\n";
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, std::size_t>> means;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    csv += std::to_string(jobs[i].L) + "," + std::to_string(jobs[i].n_e) + "," +
           std::to_string(jobs[i].run) + "," + std::to_string(results[i].n_d) + "," +
           (results[i].censored ? "1" : "0") + "\n";
    auto& acc = means[{jobs[i].L, jobs[i].n_e}];
    acc.first += static_cast<double>(results[i].n_d);
    ++acc.second;
  }
  if (o.out.empty()) {
    std::cout << csv;
  } else {
    write_file_atomic(o.out, csv);
    for (const auto& [key, acc] : means) {
      const double nd = acc.first / static_cast<double>(acc.second);
      std::printf("%s L=%zu n_e=%zu runs=%zu n_d/(L-1)=%.6g H_n_e=%.6g\n", o.model.c_str(),
                  key.first, key.second, acc.second, nd / (key.first - 1.0),
                  harmonic_number(key.second));
    }
  }
  return kOk;
}

json fit_json(const ScalingFit& f) {
  return json{{"exponent", f.exponent},
              {"stderr", f.stderr_exponent},
              {"prefactor", f.prefactor},
              {"window", {f.window_lo, f.window_hi}},
              {"r2", f.r2},
              {"points", f.points}};
}

json analyze_cell(const LoadedCell& cell) {
  const EnsembleSeries series = aggregate(cell.records);
  json out{{"model", to_string(cell.config.model)},
           {"L", cell.config.L},
           {"p", cell.config.p},
           {"config_hash", cell.hash},
           {"n_traj", series.n_traj},
           {"mean_S_half", steady_mean_s(cell.records)},
           {"W", steady_mean_w(cell.records)}};
  std::vector<double> gt, gs;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    if (series.times[i] > static_cast<double>(cell.config.t_burn)) break;
    gt.push_back(series.times[i]);
    gs.push_back(series.mean[i]);
  }
  if (gt.size() >= 8) {
    const std::size_t window = std::max<std::size_t>(2, gt.size() / 10);
    const std::size_t eq = detect_steady_state(gs, window, 2.0);
    const double t_sat = eq < gt.size() ? gt[eq] : gt.back();
    try {
      out["growth_fit"] = fit_json(fit_power_law(gt, gs, 10.0, t_sat / 3.0));
    } catch (const ConfigError& e) {
      out["growth_fit"] = json{{"error", e.what()}};
    }
  }
  return out;
}

struct AnalyzeOptions {
  std::vector<std::string> inputs;
  bool force = false;
  std::string out;
};

int analyze_command(const AnalyzeOptions& o) {
  std::vector<LoadedCell> cells;
  for (const auto& in : o.inputs) cells.push_back(load_cell(in));
  std::set<std::string> hashes;
  for (const auto& c : cells) hashes.insert(c.hash);
  if (hashes.size() > 1 && !o.force) {
    throw ConfigError("inputs carry " + std::to_string(hashes.size()) +
                      " different config hashes (use --force to combine)");
  }
  json doc{{"format", kFormatTag}, {"version", kLibraryVersion}, {"cells", json::array()}};
  std::map<std::size_t, std::map<double, double>> w_by_L;
  std::map<std::size_t, ScalingCurve> curves;
  for (const auto& c : cells) {
    json rec = analyze_cell(c);
    w_by_L[c.config.L][c.config.p] = rec["W"].get<double>() / std::sqrt(double(c.config.L));
    auto& curve = curves[c.config.L];
    curve.L = c.config.L;
    curve.p.push_back(c.config.p);
    curve.value.push_back(rec["mean_S_half"].get<double>());
    doc["cells"].push_back(std::move(rec));
  }
  // Sweep-level estimators when the inputs span a (p, L) grid.
  if (w_by_L.size() >= 2) {
    json cross = json::array();
    for (auto a = w_by_L.begin(), b = std::next(a); b != w_by_L.end(); ++a, ++b) {
      std::vector<double> ps, ya, yb;
      for (const auto& [p, w] : a->second) {
        if (!b->second.count(p)) continue;
        ps.push_back(p);
        ya.push_back(w);
        yb.push_back(b->second.at(p));
      }
      if (ps.size() < 2) continue;
      cross.push_back(json{{"L_small", a->first},
                           {"L_large", b->first},
                           {"p", crossings(ps, ya, yb)}});
    }
    doc["w_sqrtL_crossings"] = cross;
  }
  const auto pc = critical_point(cells.empty() ? ModelKind::haar : cells.front().config.model);
  if (curves.size() >= 3 && pc) {
    std::vector<ScalingCurve> list;
    for (auto& [L, c] : curves) list.push_back(c);
    const auto best = fss_collapse(list, *pc);
    doc["collapse"] = json{{"p_c", *pc}, {"nu", best.nu}, {"quality", best.quality}};
  }
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(o.out, text);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary circuit games: simulate and analyze entanglement games."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kLibraryVersion));

  RunOptions run_opts;
  std::map<CLI::App*, ModelKind> run_cmds;
  for (auto [name, kind] : {std::pair{"run-classical", ModelKind::classical},
                            std::pair{"run-fredkin", ModelKind::fredkin},
                            std::pair{"run-clifford", ModelKind::clifford},
                            std::pair{"run-haar", ModelKind::haar}}) {
    auto* cmd = app.add_subcommand(name, std::string("Run a ") + std::string(to_string(kind)) +
                                             " sweep and export every cell");
    add_run_flags(cmd, run_opts);
    run_cmds[cmd] = kind;
  }

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("disentangle-bench", "Count disentangling probes n_d(n_e)");
  bench_cmd->add_option("--model", bench.model, "clifford | haar");
  bench_cmd->add_option("--L", bench.L, "qubit counts")->delimiter(',');
  bench_cmd->add_option("--ne", bench.n_e, "entangling gate counts")->delimiter(',');
  bench_cmd->add_option("--runs", bench.runs, "runs per (L, n_e)");
  bench_cmd->add_option("--seed", bench.seed, "master seed");
  bench_cmd->add_option("--strategy", bench.strategy, "clifford disentangler strategy");
  bench_cmd->add_option("--max-probes", bench.max_probes, "haar probe cap (default 1000 L^2)");
  bench_cmd->add_option("--n-starts", bench.n_starts, "haar optimizer starts");
  bench_cmd->add_option("--max-iterations", bench.max_iterations, "haar optimizer iterations");
  bench_cmd->add_option("--out", bench.out, "CSV path (default: stdout)");
  bench_cmd->add_option("--threads", bench.threads, "worker threads");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Summarize exported cells as JSON");
  analyze_cmd->add_option("cells", analyze.inputs, "cell directories")->required();
  analyze_cmd->add_flag("--force", analyze.force, "combine cells with different config hashes");
  analyze_cmd->add_option("--out", analyze.out, "JSON path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    for (auto& [cmd, kind] : run_cmds) {
      if (cmd->parsed()) return run_command(kind, run_opts);
    }
    if (bench_cmd->parsed()) return bench_command(bench);
    if (analyze_cmd->parsed()) return analyze_command(analyze);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfig;
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kCap;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kFailure;
}
