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

#include "ucg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "ucg/analysis.hpp"
#include "ucg/errors.hpp"

namespace ucg {

using nlohmann::json;

json config_to_json(const GameConfig& cfg) {
  const auto& o = cfg.optimizer;
  return json{
      {"model", to_string(cfg.model)},
      {"L", cfg.L},
      {"p", cfg.p},
      {"seed", cfg.master_seed},
      {"trajectories", cfg.n_trajectories},
      {"t_burn", cfg.t_burn},
      {"t_measure", cfg.t_measure},
      {"measure_every", cfg.measure_every},
      {"growth_every", cfg.growth_every},
      {"growth_points_per_decade", cfg.growth_points_per_decade},
      {"keep_growth_profiles", cfg.keep_growth_profiles},
      {"keep_profiles", cfg.keep_profiles},
      {"initial", to_string(cfg.initial)},
      {"strategy", to_string(cfg.strategy)},
      {"optimizer",
       {{"n_starts", o.n_starts},
        {"max_iterations", o.max_iterations},
        {"max_restarts", o.max_restarts},
        {"initial_step", o.initial_step},
        {"f_tolerance", o.f_tolerance},
        {"x_tolerance", o.x_tolerance},
        {"entropy_threshold", o.entropy_threshold},
        {"renyi_order", o.renyi_order}}},
  };
}

namespace {

template <class T>
void read_into(const json& doc, const char* key, T& out) {
  auto it = doc.find(key);
  if (it == doc.end()) return;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw ConfigError("");
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!it->is_number_unsigned()) throw ConfigError("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw ConfigError("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) throw ConfigError("");
    }
    out = it->get<T>();
  } catch (const std::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void reject_unknown(const json& doc, std::initializer_list<const char*> known) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const char* k) { return it.key() == k; });
    if (!ok) throw ConfigError("unknown config key '" + it.key() + "'");
  }
}

std::string read_string(const json& doc, const char* key, std::string fallback) {
  read_into(doc, key, fallback);
  return fallback;
}

}  // namespace

GameConfig config_from_json(const json& doc, GameConfig cfg) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc, {"model", "L", "p", "seed", "trajectories", "t_burn", "t_measure",
                       "measure_every", "growth_every", "growth_points_per_decade",
                       "keep_growth_profiles", "keep_profiles", "initial", "strategy",
                       "optimizer", "out"});
  if (doc.contains("model")) cfg.model = parse_model(read_string(doc, "model", ""));
  if (doc.contains("L") && !doc["L"].is_array()) read_into(doc, "L", cfg.L);
  if (doc.contains("p") && !doc["p"].is_array()) read_into(doc, "p", cfg.p);
  read_into(doc, "seed", cfg.master_seed);
  read_into(doc, "trajectories", cfg.n_trajectories);
  read_into(doc, "t_burn", cfg.t_burn);
  read_into(doc, "t_measure", cfg.t_measure);
  read_into(doc, "measure_every", cfg.measure_every);
  read_into(doc, "growth_every", cfg.growth_every);
  read_into(doc, "growth_points_per_decade", cfg.growth_points_per_decade);
  read_into(doc, "keep_growth_profiles", cfg.keep_growth_profiles);
  read_into(doc, "keep_profiles", cfg.keep_profiles);
  if (doc.contains("initial")) cfg.initial = parse_initial_state(read_string(doc, "initial", ""));
  if (doc.contains("strategy")) cfg.strategy = parse_strategy(read_string(doc, "strategy", ""));
  if (doc.contains("optimizer")) {
    const json& o = doc["optimizer"];
    if (!o.is_object()) throw ConfigError("optimizer must be a JSON object");
    reject_unknown(o, {"n_starts", "max_iterations", "max_restarts", "initial_step",
                       "f_tolerance", "x_tolerance", "entropy_threshold", "renyi_order"});
    auto& t = cfg.optimizer;
    read_into(o, "n_starts", t.n_starts);
    read_into(o, "max_iterations", t.max_iterations);
    read_into(o, "max_restarts", t.max_restarts);
    read_into(o, "initial_step", t.initial_step);
    read_into(o, "f_tolerance", t.f_tolerance);
    read_into(o, "x_tolerance", t.x_tolerance);
    read_into(o, "entropy_threshold", t.entropy_threshold);
    read_into(o, "renyi_order", t.renyi_order);
  }
  return cfg;
}

std::string config_hash(const GameConfig& cfg) {
  json doc = config_to_json(cfg);
  doc.erase("p");
  doc.erase("L");
  doc.erase("trajectories");
  const std::string text = doc.dump();
  uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentManifest make_manifest(const GameConfig& base, const std::vector<double>& ps,
                                 const std::vector<std::size_t>& Ls,
                                 std::filesystem::path out_dir) {
  if (ps.empty() || Ls.empty()) throw ConfigError("sweep has no cells");
  ExperimentManifest m;
  m.out_dir = std::move(out_dir);
  for (std::size_t L : Ls) {
    for (double p : ps) {
      GameConfig cell = base;
      cell.L = L;
      cell.p = p;
      cell.validate();
      m.cells.push_back(cell);
    }
  }
  return m;
}

ExperimentManifest manifest_from_json(const json& doc, const GameConfig& base) {
  const GameConfig cfg = config_from_json(doc, base);
  std::vector<double> ps{cfg.p};
  std::vector<std::size_t> Ls{cfg.L};
  try {
    if (doc.contains("p") && doc["p"].is_array()) ps = doc["p"].get<std::vector<double>>();
    if (doc.contains("L") && doc["L"].is_array()) Ls = doc["L"].get<std::vector<std::size_t>>();
  } catch (const json::exception&) {
    throw ConfigError("p and L lists must hold numbers");
  }
  return make_manifest(cfg, ps, Ls, read_string(doc, "out", "out"));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::filesystem::path cell_directory(const std::filesystem::path& out_dir,
                                     const GameConfig& cfg) {
  char p[32];
  std::snprintf(p, sizeof p, "%g", cfg.p);
  return out_dir / (std::string(to_string(cfg.model)) + "_L" + std::to_string(cfg.L) + "_p" + p);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      throw IoError("cannot write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string header(const GameConfig& cfg) {
  return "# format=" + std::string(kFormatTag) + " config_hash=" + config_hash(cfg) +
         " model=" + std::string(to_string(cfg.model)) + " L=" + std::to_string(cfg.L) +
         (cfg.model == ModelKind::fredkin ? " c=" : " p=") + format_double(cfg.p);
}

std::map<std::string, std::string> header_fields(std::string_view line) {
  if (line.substr(0, 2) != "# ") throw IoError("missing header line");
  std::map<std::string, std::string> out;
  std::istringstream ss{std::string(line.substr(2))};
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq != std::string::npos) out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  if (out["format"] != kFormatTag) throw IoError("unsupported format tag");
  return out;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw IoError("bad number '" + std::string(s) + "'");
  }
  return v;
}

uint64_t parse_u64(const std::string& s) {
  uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw IoError("bad integer '" + s + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

std::string trajectory_csv(const TrajectoryRecord& record) {
  if (record.rows.empty()) throw IoError("trajectory has no rows");
  const std::size_t n = record.rows.front().profile.size();
  std::string out = header(record.config) + " trajectory=" +
                    std::to_string(record.trajectory_index) + " seed=" +
                    std::to_string(record.seed) + " cap_hits=" + std::to_string(record.cap_hits) +
                    "\n";
  out += "t";
  for (std::size_t x = 1; x <= n; ++x) out += ",S_" + std::to_string(x);
  out += "\n";
  for (const auto& row : record.rows) {
    if (row.profile.size() != n || n == 0) throw IoError("row without a full profile");
    out += format_double(row.t);
    for (double s : row.profile) {
      out += ',';
      out += format_double(s);
    }
    out += '\n';
  }
  return out;
}

TrajectoryRecord parse_trajectory_csv(std::string_view text, const GameConfig& cfg) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 2) throw IoError("trajectory file is truncated");
  auto fields = header_fields(lines[0]);
  if (fields["config_hash"] != config_hash(cfg)) throw IoError("trajectory hash mismatch");

  TrajectoryRecord rec;
  rec.config = cfg;
  rec.trajectory_index = parse_u64(fields["trajectory"]);
  rec.seed = parse_u64(fields["seed"]);
  rec.cap_hits = parse_u64(fields["cap_hits"]);
  const std::size_t n = split(lines[1], ',').size() - 1;
  if (n < cfg.L / 2) throw IoError("profile columns do not match L");
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto cols = split(lines[i], ',');
    if (cols.size() != n + 1) throw IoError("ragged trajectory row");
    MeasurementRow row;
    row.t = parse_double(cols[0]);
    for (std::size_t x = 1; x <= n; ++x) row.profile.push_back(parse_double(cols[x]));
    row.s_half = row.profile[cfg.L / 2 - 1];
    row.steady = row.t > static_cast<double>(cfg.t_burn);
    rec.rows.push_back(std::move(row));
  }
  compute_w_contributions(rec);
  return rec;
}

std::string aggregate_csv(std::span<const TrajectoryRecord> records) {
  const EnsembleSeries series = aggregate(records);
  std::string out = header(records.front().config) + "\n";
  out += "t,mean_S_half,var_S_half,n_traj\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out += format_double(series.times[i]) + "," + format_double(series.mean[i]) + "," +
           format_double(series.variance[i]) + "," + std::to_string(series.n_traj) + "\n";
  }
  return out;
}

json cell_metadata(std::span<const TrajectoryRecord> records) {
  const GameConfig& cfg = records.front().config;
  json caps = json::array();
  for (const auto& r : records) caps.push_back(r.cap_hits);
  return json{{"format", kFormatTag},
              {"version", kLibraryVersion},
              {"config_hash", config_hash(cfg)},
              {"config", config_to_json(cfg)},
              {"n_traj", records.size()},
              {"cap_hits", caps}};
}

std::filesystem::path export_cell(const std::filesystem::path& out_dir,
                                  std::span<const TrajectoryRecord> records) {
  if (records.empty()) throw IoError("no trajectories to export");
  const GameConfig& cfg = records.front().config;
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& r : records) {
    char name[32];
    std::snprintf(name, sizeof name, "traj_%04zu.csv", r.trajectory_index);
    files.emplace_back(name, trajectory_csv(r));
  }
  try {
    files.emplace_back("aggregate.csv", aggregate_csv(records));
  } catch (const ConfigError& e) {
    throw IoError(e.what());
  }
  files.emplace_back("meta.json", cell_metadata(records).dump(2) + "\n");
  const auto dir = cell_directory(out_dir, cfg);
  for (const auto& [name, body] : files) write_file_atomic(dir / name, body);
  return dir;
}

LoadedCell load_cell(const std::filesystem::path& dir) {
  LoadedCell cell;
  json meta;
  try {
    meta = json::parse(read_file(dir / "meta.json"));
    if (meta.at("format") != kFormatTag) throw IoError("unsupported format in " + dir.string());
    cell.config = config_from_json(meta.at("config"));
    cell.hash = meta.at("config_hash").get<std::string>();
  } catch (const json::exception& e) {
    throw IoError("bad metadata in " + dir.string() + ": " + e.what());
  } catch (const ConfigError& e) {
    throw IoError("bad config in " + dir.string() + ": " + e.what());
  }
  if (cell.hash != config_hash(cell.config)) throw IoError("metadata hash mismatch");
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("traj_") && name.ends_with(".csv")) files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + dir.string());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) cell.records.push_back(parse_trajectory_csv(read_file(f), cell.config));
  if (cell.records.size() != meta.value("n_traj", std::size_t{0})) {
    throw IoError("trajectory count does not match metadata in " + dir.string());
  }
  return cell;
}

std::string file_config_hash(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (path.extension() == ".json") {
    try {
      return json::parse(text).at("config_hash").get<std::string>();
    } catch (const json::exception&) {
      throw IoError("no config hash in " + path.string());
    }
  }
  auto fields = header_fields(split(text, '\n').front());
  return fields["config_hash"];
}

}  // namespace ucg
