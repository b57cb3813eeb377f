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

#include "pmcov/density.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pmcov/errors.hpp"
#include "pmcov/grid_io.hpp"

namespace pmcov {

namespace {

// Unnormalized Gaussian kernel exp(-d^T S^-1 d / 2).
double gaussian(Point p, Point mean, const Covariance& c) {
  const double dx = p.x - mean.x;
  const double dy = p.y - mean.y;
  const double det = c.xx * c.yy - c.xy * c.xy;
  const double q = (c.yy * dx * dx - 2.0 * c.xy * dx * dy + c.xx * dy * dy) / det;
  return std::exp(-0.5 * q) / (2.0 * M_PI * std::sqrt(det));
}

template <typename F>
ScalarField sample(const Grid2D& grid, F&& f) {
  ScalarField out(grid);
  for (std::size_t j = 0; j < grid.ny(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i) out(i, j) = f(grid.center(i, j));
  return out;
}

std::string describe_point(Point p) {
  std::ostringstream os;
  os << "(" << p.x << "," << p.y << ")";
  return os.str();
}

}  // namespace

ScalarField normalize(ScalarField f) {
  for (double v : f.values()) {
    if (!std::isfinite(v)) throw std::invalid_argument("density has a non-finite value");
    if (v < 0.0) throw std::invalid_argument("density has a negative value");
  }
  const double mass = f.integral();
  if (!(mass > 0.0)) throw std::invalid_argument("density is identically zero and cannot be normalized");
  for (double& v : f.values()) v /= mass;
  return f;
}

TargetDensity::TargetDensity(ScalarField field, std::string descriptor)
    : field_(normalize(std::move(field))), descriptor_(std::move(descriptor)) {}

TargetDensity circle_square(const Grid2D& grid, double square_half_width, double ring_inner_radius,
                            double ring_outer_radius, Point center) {
  if (!(square_half_width > 0.0)) throw std::invalid_argument("circle_square: square half-width must be positive");
  if (!(ring_inner_radius >= 0.0) || !(ring_inner_radius < ring_outer_radius)) {
    throw std::invalid_argument("circle_square: ring inner radius must be non-negative and below the outer radius");
  }
  if (center.x - ring_outer_radius < 0.0 || center.x + ring_outer_radius > grid.lx() ||
      center.y - ring_outer_radius < 0.0 || center.y + ring_outer_radius > grid.ly() ||
      square_half_width > ring_outer_radius) {
    throw std::invalid_argument("circle_square: geometry does not fit inside the domain");
  }
  ScalarField f = sample(grid, [&](Point p) {
    const double dx = p.x - center.x;
    const double dy = p.y - center.y;
    const bool in_square = std::abs(dx) <= square_half_width && std::abs(dy) <= square_half_width;
    const double r = std::hypot(dx, dy);
    const bool in_ring = r >= ring_inner_radius && r <= ring_outer_radius;
    return (in_square || in_ring) ? 1.0 : 0.0;
  });
  if (f.sum() == 0.0) throw std::invalid_argument("circle_square: geometry covers no cell centers");
  std::ostringstream d;
  d << "circle_square(half_width=" << square_half_width << ",inner=" << ring_inner_radius
    << ",outer=" << ring_outer_radius << ",center=" << describe_point(center) << ")";
  return TargetDensity(std::move(f), d.str());
}

TargetDensity gaussian_stripe(const Grid2D& grid, Point mean, const Covariance& cov,
                              StripeAxis stripe_axis, double stripe_half_width) {
  if (!cov.positive_definite()) throw std::invalid_argument("gaussian_stripe: covariance is not positive-definite");
  if (!(stripe_half_width >= 0.0)) throw std::invalid_argument("gaussian_stripe: negative stripe half-width");
  ScalarField f = sample(grid, [&](Point p) {
    const double off = stripe_axis == StripeAxis::Y ? p.y - mean.y : p.x - mean.x;
    return std::abs(off) <= stripe_half_width ? 0.0 : gaussian(p, mean, cov);
  });
  if (f.sum() == 0.0) throw std::invalid_argument("gaussian_stripe: stripe covers the whole domain");
  std::ostringstream d;
  d << "gaussian_stripe(mean=" << describe_point(mean) << ",cov=[" << cov.xx << "," << cov.xy << ","
    << cov.yy << "],axis=" << (stripe_axis == StripeAxis::Y ? "y" : "x")
    << ",half_width=" << stripe_half_width << ")";
  return TargetDensity(std::move(f), d.str());
}

TargetDensity bimodal_gaussian(const Grid2D& grid, const std::array<Point, 2>& means,
                               const std::array<Covariance, 2>& covs) {
  for (const auto& c : covs) {
    if (!c.positive_definite()) throw std::invalid_argument("bimodal_gaussian: covariance is not positive-definite");
  }
  ScalarField f = sample(grid, [&](Point p) {
    return 0.5 * gaussian(p, means[0], covs[0]) + 0.5 * gaussian(p, means[1], covs[1]);
  });
  std::ostringstream d;
  d << "bimodal_gaussian(means=" << describe_point(means[0]) << "," << describe_point(means[1]) << ")";
  return TargetDensity(std::move(f), d.str());
}

TargetDensity load_density(const std::filesystem::path& path) {
  ScalarField raw = read_grid(path);
  try {
    return TargetDensity(std::move(raw), "file(" + path.string() + ")");
  } catch (const std::invalid_argument& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

TargetDensity load_density(const std::filesystem::path& path, const Grid2D& grid) {
  TargetDensity d = load_density(path);
  if (!(d.grid() == grid)) {
    std::ostringstream os;
    os << path.string() << ": grid " << d.grid().nx() << "x" << d.grid().ny() << " (" << d.grid().lx()
       << "x" << d.grid().ly() << ") does not match expected " << grid.nx() << "x" << grid.ny() << " ("
       << grid.lx() << "x" << grid.ly() << ")";
    throw IoError(os.str());
  }
  return d;
}

}  // namespace pmcov
