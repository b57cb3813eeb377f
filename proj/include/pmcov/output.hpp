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

#include "pmcov/sim.hpp"

namespace pmcov {

/// "<config hash>_s<seed>".
std::string run_directory_name(const SimConfig& sim);

/// `step,time,E`
void write_error_csv(const std::filesystem::path& path, const std::vector<double>& series, double dt);
/// `step,agent,x,y`
void write_trajectory_csv(const std::filesystem::path& path, const std::vector<TrajectoryFrame>& frames);
/// `step,time,method,mean_E,std_E`
void write_summary_csv(const std::filesystem::path& path, const ExperimentSummary& summary);

/// Writes error.csv, trajectory.csv, config.json and optionally mu/c/e/g.grid
/// into `<root>/<run_directory_name>`; returns that directory.
std::filesystem::path write_run(const std::filesystem::path& root, const SimConfig& sim, const RunResult& result,
                                bool write_fields);

/// Shortest round-trip decimal form used in every CSV.
std::string format_double(double v);

}  // namespace pmcov
