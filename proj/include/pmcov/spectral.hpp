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

#include <complex>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "pmcov/grid.hpp"

namespace pmcov {

using Complex = std::complex<double>;

/// Half-spectrum coefficients of a real field: ny rows of (nx/2 + 1) modes.
/// Mode (j, i) sits at j * (nx/2 + 1) + i. The zero mode equals the field mean.
using Spectrum = std::vector<Complex>;

/// Wavenumbers for periodic transforms on a grid. Immutable once built and
/// safe to share between threads.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }

  /// Signed angular wavenumbers in transform order, e.g. 2*pi/L * {0,1,2,3,-4,-3,-2,-1}.
  std::span<const double> kx() const { return kx_; }
  std::span<const double> ky() const { return ky_; }

  /// kx^2 + ky^2 over the half spectrum (Nyquist kept).
  std::span<const double> k_sq() const { return k_sq_; }

  /// Wavenumbers used for first derivatives; the Nyquist entries are zero.
  double deriv_kx(std::size_t i) const { return i == grid_.nx() / 2 ? 0.0 : kx_[i]; }
  double deriv_ky(std::size_t j) const { return j == grid_.ny() / 2 ? 0.0 : ky_[j]; }

  std::size_t spectrum_width() const { return grid_.nx() / 2 + 1; }
  std::size_t spectrum_size() const { return grid_.ny() * spectrum_width(); }

 private:
  Grid2D grid_;
  std::vector<double> kx_;
  std::vector<double> ky_;
  std::vector<double> k_sq_;
};

/// FFT plans and scratch buffers for one grid. Not thread-safe; keep one per
/// run or per thread.
class SpectralTransform {
 public:
  explicit SpectralTransform(const Grid2D& grid);
  ~SpectralTransform();
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  /// Forward transform, scaled so that the zero mode is the mean.
  void forward(std::span<const double> in, Spectrum& out);
  void inverse(const Spectrum& in, std::span<double> out);

  Spectrum forward(const ScalarField& f);
  ScalarField inverse(const Spectrum& s);

  const Grid2D& grid() const { return grid_; }

 private:
  struct Plans;
  Grid2D grid_;
  std::unique_ptr<Plans> plans_;
};

/// Spectral differential operators bound to a shared workspace and a private
/// transform.
class SpectralOps {
 public:
  explicit SpectralOps(std::shared_ptr<const SpectralWorkspace> ws);

  const SpectralWorkspace& workspace() const { return *ws_; }
  const Grid2D& grid() const { return ws_->grid(); }
  SpectralTransform& transform() { return transform_; }

  std::pair<ScalarField, ScalarField> gradient(const ScalarField& f);
  /// Gradient of the field whose spectrum is given.
  std::pair<ScalarField, ScalarField> gradient(const Spectrum& f_hat);
  ScalarField divergence(const ScalarField& vx, const ScalarField& vy);
  /// Spectrum of div(vx, vy), without returning to real space.
  Spectrum divergence_spectrum(const ScalarField& vx, const ScalarField& vy);
  /// Laplacian through the -k^2 symbol.
  ScalarField laplacian(const ScalarField& f);

 private:
  std::shared_ptr<const SpectralWorkspace> ws_;
  SpectralTransform transform_;
  Spectrum a_;
  Spectrum b_;
};

SpectralWorkspace make_workspace(const Grid2D& grid);

std::pair<ScalarField, ScalarField> gradient(const ScalarField& f, const SpectralWorkspace& ws);
ScalarField divergence(const ScalarField& vx, const ScalarField& vy, const SpectralWorkspace& ws);
ScalarField laplacian(const ScalarField& f, const SpectralWorkspace& ws);

}  // namespace pmcov
