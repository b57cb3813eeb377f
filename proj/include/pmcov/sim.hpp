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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmcov/agents.hpp"
#include "pmcov/coverage.hpp"
#include "pmcov/density.hpp"
#include "pmcov/diffusion.hpp"

namespace pmcov {

/// Target scenario. All coordinates and lengths are fractions of the domain
/// edge and get scaled by (lx, ly) when the density is built.
struct ScenarioConfig {
  std::string name = "circle_square";  ///< circle_square | gaussian_stripe | bimodal_gaussian | file

  struct CircleSquare {
    double square_half_width = 0.1;
    double ring_inner_radius = 0.3;
    double ring_outer_radius = 0.35;
    Point center{0.5, 0.5};
  } circle_square;

  struct GaussianStripe {
    Point mean{0.5, 0.5};
    Covariance covariance{0.0225, 0.0, 0.0225};
    StripeAxis stripe_axis = StripeAxis::Y;
    double stripe_half_width = 0.05;
  } gaussian_stripe;

  struct Bimodal {
    std::array<Point, 2> means{Point{0.3, 0.3}, Point{0.7, 0.7}};
    std::array<Covariance, 2> covariances{Covariance{0.0225, 0.0, 0.0225}, Covariance{0.0225, 0.0, 0.0225}};
  } bimodal_gaussian;

  std::string path;  ///< grid dump, for name == "file"
};

TargetDensity make_density(const ScenarioConfig& scenario, const Grid2D& grid);

struct SimConfig {
  std::size_t nx = 64;
  std::size_t ny = 64;
  double lx = 64.0;
  double ly = 64.0;
  ScenarioConfig scenario;
  Method method = PeronaMalikMethod{};
  DiffusionParams diffusion;
  /// Start each potential solve from the previous potential plus the new
  /// error increment instead of from the error itself.
  bool warm_start = false;
  ControlParams control;
  std::size_t n_agents = 10;
  std::size_t n_steps = 1000;
  std::uint64_t seed = 1;
  /// Fractions of (lx, ly); empty means seeded uniform placement.
  std::vector<Point> initial_positions;
  std::size_t trajectory_stride = 1;

  Grid2D grid() const { return Grid2D(nx, ny, lx, ly); }
  /// Throws ConfigError naming the offending dotted key.
  void validate() const;
};

struct TrajectoryFrame {
  std::size_t step = 0;
  std::vector<Point> positions;
};

struct RunResult {
  std::vector<double> error_series;  ///< E at steps 0..n_steps
  std::vector<TrajectoryFrame> trajectories;
  std::optional<ScalarField> mu, c, e, g;  ///< final fields; g is the ascent potential
  std::vector<Point> initial_positions;
  double elapsed_seconds = 0.0;
};

/// Everything visible at the end of step `step` (after its deposit).
struct StepView {
  std::size_t step;
  double time;
  double error;
  const CoverageAccumulator& coverage;
  const TargetDensity& mu;
  const ScalarField& c;
  const ScalarField& e;
  const ScalarField& g;  ///< potential that steers the next move
  std::span<const AgentState> agents;
};

using StepObserver = std::function<void(const StepView&)>;

/// Deterministic in config (seed included). Throws SolverError with the
/// failing step on numerical breakdown.
RunResult run(const SimConfig& config, const StepObserver& observer = {});

/// Starting positions in domain units for a config.
std::vector<Point> initial_positions(const SimConfig& config);

struct RunOutcome {
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  std::optional<RunResult> result;
  std::string error;  ///< set when result is empty
};

struct MethodSummary {
  std::string method;
  std::vector<RunOutcome> runs;
  std::vector<double> mean_error;  ///< per step, over successful runs
  std::vector<double> std_error;   ///< sample standard deviation; 0 for a single run
  std::size_t n_failed = 0;
};

struct ExperimentSummary {
  std::vector<MethodSummary> methods;
  double time_step = 0.05;
};

/// Seed of run r for method index m.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index, std::size_t method_index,
                       bool shared_initial_positions);

/// Runs n_runs seeds for every method on up to `workers` threads.
/// Failed runs are recorded, not thrown.
ExperimentSummary experiment(const SimConfig& base, const std::vector<Method>& methods, std::size_t n_runs,
                             bool shared_initial_positions, std::size_t workers = 1);

}  // namespace pmcov
