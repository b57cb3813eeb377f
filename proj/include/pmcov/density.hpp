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
#include <filesystem>
#include <string>

#include "pmcov/grid.hpp"

namespace pmcov {

/// Symmetric 2x2 covariance.
struct Covariance {
  double xx = 1.0;
  double xy = 0.0;
  double yy = 1.0;

  bool positive_definite() const { return xx > 0.0 && xx * yy - xy * xy > 0.0; }
};

enum class StripeAxis { X, Y };

/// Non-negative field with unit integral over the domain.
class TargetDensity {
 public:
  /// Clamps nothing: throws std::invalid_argument on negative, non-finite or
  /// all-zero input, otherwise rescales to unit mass.
  TargetDensity(ScalarField field, std::string descriptor);

  const ScalarField& field() const { return field_; }
  const Grid2D& grid() const { return field_.grid(); }
  const std::string& descriptor() const { return descriptor_; }

 private:
  ScalarField field_;
  std::string descriptor_;
};

/// Rescales a non-negative field so that sum * cell_area == 1.
ScalarField normalize(ScalarField f);

/// Uniform density on a centered square plus a surrounding annulus, zero elsewhere.
TargetDensity circle_square(const Grid2D& grid, double square_half_width, double ring_inner_radius,
                            double ring_outer_radius, Point center);

/// Gaussian with a zero band through `mean`. With StripeAxis::Y the band is
/// |y - mean.y| <= stripe_half_width; with X it is |x - mean.x| <= stripe_half_width.
TargetDensity gaussian_stripe(const Grid2D& grid, Point mean, const Covariance& cov,
                              StripeAxis stripe_axis, double stripe_half_width);

/// Equal-weight mixture of two Gaussians.
TargetDensity bimodal_gaussian(const Grid2D& grid, const std::array<Point, 2>& means,
                               const std::array<Covariance, 2>& covs);

/// Reads a grid dump and renormalizes it. The dump must match `grid`.
TargetDensity load_density(const std::filesystem::path& path, const Grid2D& grid);
/// Same, taking the grid from the file header.
TargetDensity load_density(const std::filesystem::path& path);

}  // namespace pmcov
