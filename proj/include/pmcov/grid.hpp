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

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace pmcov {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;

  double norm() const { return std::hypot(x, y); }
};

using Point = Vec2;

/// Uniform periodic discretization of the rectangle [0,lx] x [0,ly].
///
/// Cell (i, j) covers [i*hx, (i+1)*hx) x [j*hy, (j+1)*hy) and is sampled at its
/// center. Storage is row-major with x fastest: index = j * nx + i.
class Grid2D {
 public:
  /// Throws std::invalid_argument unless nx, ny are even and >= 8 and the
  /// edge lengths are positive and finite.
  Grid2D(std::size_t nx, std::size_t ny, double lx = 1.0, double ly = 1.0);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return nx_ * ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double hx() const { return lx_ / static_cast<double>(nx_); }
  double hy() const { return ly_ / static_cast<double>(ny_); }
  double cell_area() const { return cell_area_; }
  double area() const { return lx_ * ly_; }

  std::size_t index(std::size_t i, std::size_t j) const { return j * nx_ + i; }
  Point center(std::size_t i, std::size_t j) const {
    return {(static_cast<double>(i) + 0.5) * hx(), (static_cast<double>(j) + 0.5) * hy()};
  }
  bool contains(Point p) const { return p.x >= 0.0 && p.x <= lx_ && p.y >= 0.0 && p.y <= ly_; }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  std::size_t nx_;
  std::size_t ny_;
  double lx_;
  double ly_;
  double cell_area_;
};

/// Real-valued samples at the cell centers of a grid.
class ScalarField {
 public:
  explicit ScalarField(const Grid2D& grid, double fill = 0.0);
  /// Throws std::invalid_argument when values.size() != grid.size().
  ScalarField(const Grid2D& grid, std::vector<double> values);

  const Grid2D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[grid_.index(i, j)]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[grid_.index(i, j)]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double sum() const;
  double mean() const { return sum() / static_cast<double>(values_.size()); }
  /// Sum of values times cell area.
  double integral() const { return sum() * grid_.cell_area(); }
  double max_abs() const;
  bool all_finite() const;

  ScalarField& operator*=(double s);

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

/// Throws std::invalid_argument when the two fields live on different grids.
void require_same_grid(const ScalarField& a, const ScalarField& b, const char* what);

}  // namespace pmcov
