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

#include "pmcov/coverage.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pmcov {

namespace {

// ceil(u) - 1 puts u == k (an edge) into cell k - 1; clamping handles u == 0.
std::size_t axis_cell(double coord, double h, std::size_t n) {
  const double c = std::ceil(coord / h) - 1.0;
  if (c <= 0.0) return 0;
  const auto k = static_cast<std::size_t>(c);
  return k >= n ? n - 1 : k;
}

}  // namespace

std::size_t cell_of(const Grid2D& grid, Point p) {
  if (!grid.contains(p)) {
    std::ostringstream os;
    os << "position (" << p.x << ", " << p.y << ") is outside the domain";
    throw std::out_of_range(os.str());
  }
  return grid.index(axis_cell(p.x, grid.hx(), grid.nx()), axis_cell(p.y, grid.hy(), grid.ny()));
}

CoverageAccumulator::CoverageAccumulator(const Grid2D& grid, std::size_t n_agents)
    : grid_(grid), n_agents_(n_agents), visit_time_(grid.size(), 0.0) {
  if (n_agents == 0) throw std::invalid_argument("coverage accumulator needs at least one agent");
}

void CoverageAccumulator::deposit(std::span<const Point> positions, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("deposit: dt must be positive");
  if (positions.size() != n_agents_) {
    throw std::invalid_argument("deposit: expected " + std::to_string(n_agents_) + " positions, got " +
                                std::to_string(positions.size()));
  }
  for (const Point& p : positions) visit_time_[cell_of(grid_, p)] += dt;
  total_time_ += dt;
}

ScalarField empirical_density(const CoverageAccumulator& acc) {
  if (!(acc.total_time() > 0.0)) throw std::logic_error("empirical density is undefined before any deposit");
  const double scale =
      1.0 / (static_cast<double>(acc.n_agents()) * acc.total_time() * acc.grid().cell_area());
  ScalarField c(acc.grid());
  const auto vt = acc.visit_time();
  for (std::size_t k = 0; k < vt.size(); ++k) c[k] = vt[k] * scale;
  return c;
}

ErrorField error_field(const ScalarField& c, const TargetDensity& mu) {
  require_same_grid(c, mu.field(), "error_field");
  ScalarField e(c.grid());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = mu.field()[k] - c[k];
  return ErrorField{std::move(e)};
}

double global_error(const ScalarField& e) {
  double s = 0.0;
  for (double v : e.values()) s += v * v;
  return std::sqrt(s * e.grid().cell_area());
}

}  // namespace pmcov
