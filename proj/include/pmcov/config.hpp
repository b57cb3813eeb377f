// Copyright 2026 The pmcov Authors.
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

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "pmcov/sim.hpp"

namespace pmcov {

struct CompareSection {
  std::vector<std::string> methods{"pm", "hedac", "smc"};
  std::size_t n_runs = 5;
  bool shared_initial_positions = true;
};

/// Optional one-parameter sweep for `compare`: the experiment is repeated
/// with `parameter` (a dotted key) set to each entry of `values`.
struct SweepSection {
  std::string parameter;
  std::vector<nlohmann::json> values;
};

struct SnapshotSection {
  std::vector<std::size_t> steps{0};
};

/// The whole configuration document.
struct AppConfig {
  SimConfig sim;
  /// Baseline parameters, used whichever method is active.
  HedacMethod hedac;
  SmcMethod smc;
  bool write_fields = true;
  CompareSection compare;
  SweepSection sweep;
  SnapshotSection snapshot;
};

/// Every key with its default value.
nlohmann::json default_config_json();

nlohmann::json to_json(const AppConfig& cfg);

/// Merges `doc` over the defaults and converts it. Unknown keys, wrong types
/// and invalid values throw ConfigError naming the dotted key.
AppConfig parse_config(const nlohmann::json& doc);

/// Reads a JSON file; throws ConfigError on unreadable or malformed input.
nlohmann::json read_config_document(const std::filesystem::path& path);

/// Applies "dotted.key=value" to a document. The value is parsed as JSON when
/// possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// 16 hex digits identifying the simulation settings, seed excluded.
std::string config_hash(const SimConfig& sim);

/// Method for a name, carrying the baseline parameters of cfg.
Method resolve_method(const AppConfig& cfg, const std::string& name);
/// Methods listed in cfg.compare.
std::vector<Method> compare_methods(const AppConfig& cfg);

}  // namespace pmcov
