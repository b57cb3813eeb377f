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

#include "pmcov/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pmcov {

Grid2D::Grid2D(std::size_t nx, std::size_t ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly), cell_area_(0.0) {
  if (nx < 8 || ny < 8) {
    throw std::invalid_argument("grid dimensions must be at least 8x8, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  }
  if (nx % 2 != 0 || ny % 2 != 0) {
    throw std::invalid_argument("grid dimensions must be even, got " + std::to_string(nx) +
                                "x" + std::to_string(ny));
  }
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw std::invalid_argument("domain edge lengths must be positive and finite");
  }
  cell_area_ = lx * ly / static_cast<double>(nx * ny);
}

ScalarField::ScalarField(const Grid2D& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const Grid2D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field has " + std::to_string(values_.size()) +
                                " values, grid expects " + std::to_string(grid_.size()));
  }
}

// Neumaier compensated summation.
double ScalarField::sum() const {
  double s = 0.0;
  double comp = 0.0;
  for (double v : values_) {
    const double t = s + v;
    comp += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  return s + comp;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* what) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument(std::string(what) + ": fields are on different grids");
  }
}

}  // namespace pmcov
