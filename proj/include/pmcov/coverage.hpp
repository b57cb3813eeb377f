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

#include <span>
#include <vector>

#include "pmcov/density.hpp"
#include "pmcov/grid.hpp"

namespace pmcov {

/// Index of the cell whose center is nearest to p. A point on a shared cell
/// edge goes to the lower index. Throws std::out_of_range outside the domain.
std::size_t cell_of(const Grid2D& grid, Point p);

/// Per-cell dwell time of a team of agents under a point (Dirac) footprint.
class CoverageAccumulator {
 public:
  CoverageAccumulator(const Grid2D& grid, std::size_t n_agents);

  /// Adds dt to the cell holding each agent and advances the clock by dt.
  /// positions.size() must equal n_agents().
  void deposit(std::span<const Point> positions, double dt);

  const Grid2D& grid() const { return grid_; }
  std::size_t n_agents() const { return n_agents_; }
  double total_time() const { return total_time_; }
  std::span<const double> visit_time() const { return visit_time_; }

 private:
  Grid2D grid_;
  std::size_t n_agents_;
  double total_time_ = 0.0;
  std::vector<double> visit_time_;
};

/// Time-averaged trajectory density, visit_time / (N * t * cell_area).
/// Throws std::logic_error before the first deposit.
ScalarField empirical_density(const CoverageAccumulator& acc);

/// Coverage deficit, positive where the target is under-visited.
struct ErrorField {
  ScalarField field;
};

/// Returns mu - c.
ErrorField error_field(const ScalarField& c, const TargetDensity& mu);

/// L2 norm over the domain: sqrt(sum(e^2) * cell_area).
double global_error(const ScalarField& e);
inline double global_error(const ErrorField& e) { return global_error(e.field); }

}  // namespace pmcov
