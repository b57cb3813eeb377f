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

#include "pmcov/output.hpp"

#include <charconv>
#include <fstream>

#include "pmcov/config.hpp"
#include "pmcov/errors.hpp"
#include "pmcov/grid_io.hpp"

namespace pmcov {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string run_directory_name(const SimConfig& sim) {
  return config_hash(sim) + "_s" + std::to_string(sim.seed);
}

void write_error_csv(const std::filesystem::path& path, const std::vector<double>& series, double dt) {
  auto out = open_out(path);
  out << "step,time,E\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    out << s << ',' << format_double(static_cast<double>(s) * dt) << ',' << format_double(series[s]) << '\n';
  }
  finish(out, path);
}

void write_trajectory_csv(const std::filesystem::path& path, const std::vector<TrajectoryFrame>& frames) {
  auto out = open_out(path);
  out << "step,agent,x,y\n";
  for (const auto& f : frames) {
    for (std::size_t a = 0; a < f.positions.size(); ++a) {
      out << f.step << ',' << a << ',' << format_double(f.positions[a].x) << ','
          << format_double(f.positions[a].y) << '\n';
    }
  }
  finish(out, path);
}

void write_summary_csv(const std::filesystem::path& path, const ExperimentSummary& summary) {
  auto out = open_out(path);
  out << "step,time,method,mean_E,std_E\n";
  for (const auto& m : summary.methods) {
    for (std::size_t s = 0; s < m.mean_error.size(); ++s) {
      out << s << ',' << format_double(static_cast<double>(s) * summary.time_step) << ',' << m.method << ','
          << format_double(m.mean_error[s]) << ',' << format_double(m.std_error[s]) << '\n';
    }
  }
  finish(out, path);
}

std::filesystem::path write_run(const std::filesystem::path& root, const SimConfig& sim, const RunResult& result,
                                bool write_fields) {
  const std::filesystem::path dir = root / run_directory_name(sim);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  write_error_csv(dir / "error.csv", result.error_series, sim.control.dt);
  write_trajectory_csv(dir / "trajectory.csv", result.trajectories);
  {
    AppConfig app;
    app.sim = sim;
    auto out = open_out(dir / "config.json");
    out << to_json(app).dump(2) << '\n';
    finish(out, dir / "config.json");
  }
  if (write_fields) {
    if (result.mu) write_grid(dir / "mu.grid", *result.mu);
    if (result.c) write_grid(dir / "c.grid", *result.c);
    if (result.e) write_grid(dir / "e.grid", *result.e);
    if (result.g) write_grid(dir / "g.grid", *result.g);
  }
  return dir;
}

}  // namespace pmcov
