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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ucg/game.hpp"

namespace ucg {

inline constexpr std::string_view kFormatTag = "ucg-1";
inline constexpr std::string_view kLibraryVersion = "0.1.0";

nlohmann::json config_to_json(const GameConfig& cfg);

/// Applies the keys of `doc` on top of `base`. Unknown keys, wrong types and
/// values that fail validation raise ConfigError.
GameConfig config_from_json(const nlohmann::json& doc, GameConfig base = {});

/// Hash of everything except p, L and the trajectory count, so the cells of
/// one sweep share it. 16 hex digits.
std::string config_hash(const GameConfig& cfg);

/// Cartesian product of p and L lists around one base config.
struct ExperimentManifest {
  std::vector<GameConfig> cells;
  std::filesystem::path out_dir = "out";
};

/// "p" and "L" may be numbers or lists; "out" names the output directory.
ExperimentManifest manifest_from_json(const nlohmann::json& doc, const GameConfig& base);
ExperimentManifest make_manifest(const GameConfig& base, const std::vector<double>& ps,
                                 const std::vector<std::size_t>& Ls,
                                 std::filesystem::path out_dir);

/// %.17g.
std::string format_double(double v);

/// "<model>_L<L>_p<p>" below the output directory.
std::filesystem::path cell_directory(const std::filesystem::path& out_dir, const GameConfig& cfg);

/// Writes to a sibling temp file, then renames. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// Wide CSV: header comment, then `t,S_1,...,S_n`. Every row needs a profile.
std::string trajectory_csv(const TrajectoryRecord& record);
/// `t,mean_S_half,var_S_half,n_traj`.
std::string aggregate_csv(std::span<const TrajectoryRecord> records);
nlohmann::json cell_metadata(std::span<const TrajectoryRecord> records);

/// Rebuilds a record from its CSV and the cell config.
TrajectoryRecord parse_trajectory_csv(std::string_view text, const GameConfig& cfg);

/// Writes traj_NNNN.csv, aggregate.csv and meta.json for one cell and
/// returns the cell directory. Throws IoError on an empty record set
/// before touching the disk.
std::filesystem::path export_cell(const std::filesystem::path& out_dir,
                                  std::span<const TrajectoryRecord> records);

struct LoadedCell {
  GameConfig config;
  std::string hash;
  std::vector<TrajectoryRecord> records;
};

/// Reads a cell written by export_cell. Throws IoError on missing or
/// inconsistent files.
LoadedCell load_cell(const std::filesystem::path& dir);

/// Extracts config_hash=... from the first line of a file.
std::string file_config_hash(const std::filesystem::path& path);

}  // namespace ucg
