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

#include "pmcov/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace pmcov {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> signed_wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / length;
  const auto half = static_cast<long>(n / 2);
  for (std::size_t m = 0; m < n; ++m) {
    long s = static_cast<long>(m);
    if (s >= half) s -= static_cast<long>(n);
    k[m] = base * static_cast<double>(s);
  }
  return k;
}

std::shared_ptr<const SpectralWorkspace> borrow(const SpectralWorkspace& ws) {
  return {&ws, [](const SpectralWorkspace*) {}};
}

}  // namespace

SpectralWorkspace::SpectralWorkspace(const Grid2D& grid)
    : grid_(grid), kx_(signed_wavenumbers(grid.nx(), grid.lx())),
      ky_(signed_wavenumbers(grid.ny(), grid.ly())) {
  const std::size_t w = spectrum_width();
  k_sq_.resize(spectrum_size());
  for (std::size_t j = 0; j < grid_.ny(); ++j) {
    for (std::size_t i = 0; i < w; ++i) {
      // kx_[nx/2] is -pi*nx/L; squared it is the positive Nyquist value.
      k_sq_[j * w + i] = kx_[i] * kx_[i] + ky_[j] * ky_[j];
    }
  }
}

SpectralWorkspace make_workspace(const Grid2D& grid) { return SpectralWorkspace(grid); }

struct SpectralTransform::Plans {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

SpectralTransform::SpectralTransform(const Grid2D& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  const int nx = static_cast<int>(grid.nx());
  const int ny = static_cast<int>(grid.ny());
  const std::size_t n_spec = grid.ny() * (grid.nx() / 2 + 1);
  std::lock_guard lock(planner_mutex());
  plans_->real = fftw_alloc_real(grid.size());
  plans_->spec = fftw_alloc_complex(n_spec);
  if (plans_->real == nullptr || plans_->spec == nullptr) {
    fftw_free(plans_->real);
    fftw_free(plans_->spec);
    throw std::bad_alloc();
  }
  // FFTW_ESTIMATE keeps plan selection, and so rounding, identical across runs.
  plans_->r2c = fftw_plan_dft_r2c_2d(ny, nx, plans_->real, plans_->spec, FFTW_ESTIMATE);
  plans_->c2r = fftw_plan_dft_c2r_2d(ny, nx, plans_->spec, plans_->real, FFTW_ESTIMATE);
}

SpectralTransform::~SpectralTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plans_->r2c);
  fftw_destroy_plan(plans_->c2r);
  fftw_free(plans_->real);
  fftw_free(plans_->spec);
}

void SpectralTransform::forward(std::span<const double> in, Spectrum& out) {
  const std::size_t n_spec = grid_.ny() * (grid_.nx() / 2 + 1);
  std::copy(in.begin(), in.end(), plans_->real);
  fftw_execute(plans_->r2c);
  out.resize(n_spec);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t k = 0; k < n_spec; ++k) {
    out[k] = Complex(plans_->spec[k][0] * scale, plans_->spec[k][1] * scale);
  }
}

void SpectralTransform::inverse(const Spectrum& in, std::span<double> out) {
  const std::size_t n_spec = grid_.ny() * (grid_.nx() / 2 + 1);
  for (std::size_t k = 0; k < n_spec; ++k) {
    plans_->spec[k][0] = in[k].real();
    plans_->spec[k][1] = in[k].imag();
  }
  fftw_execute(plans_->c2r);
  std::copy(plans_->real, plans_->real + grid_.size(), out.begin());
}

Spectrum SpectralTransform::forward(const ScalarField& f) {
  Spectrum s;
  forward(f.values(), s);
  return s;
}

ScalarField SpectralTransform::inverse(const Spectrum& s) {
  ScalarField f(grid_);
  inverse(s, f.values());
  return f;
}

SpectralOps::SpectralOps(std::shared_ptr<const SpectralWorkspace> ws)
    : ws_(std::move(ws)), transform_(ws_->grid()) {}

std::pair<ScalarField, ScalarField> SpectralOps::gradient(const ScalarField& f) {
  Spectrum f_hat;
  transform_.forward(f.values(), f_hat);
  return gradient(f_hat);
}

std::pair<ScalarField, ScalarField> SpectralOps::gradient(const Spectrum& f_hat) {
  const std::size_t w = ws_->spectrum_width();
  const std::size_t ny = grid().ny();
  a_.resize(f_hat.size());
  b_.resize(f_hat.size());
  const Complex I(0.0, 1.0);
  for (std::size_t j = 0; j < ny; ++j) {
    const double ky = ws_->deriv_ky(j);
    for (std::size_t i = 0; i < w; ++i) {
      const std::size_t k = j * w + i;
      a_[k] = I * ws_->deriv_kx(i) * f_hat[k];
      b_[k] = I * ky * f_hat[k];
    }
  }
  std::pair<ScalarField, ScalarField> out{ScalarField(grid()), ScalarField(grid())};
  transform_.inverse(a_, out.first.values());
  transform_.inverse(b_, out.second.values());
  return out;
}

Spectrum SpectralOps::divergence_spectrum(const ScalarField& vx, const ScalarField& vy) {
  require_same_grid(vx, vy, "divergence");
  if (!(vx.grid() == grid())) throw std::invalid_argument("divergence: field grid differs from workspace");
  transform_.forward(vx.values(), a_);
  transform_.forward(vy.values(), b_);
  const std::size_t w = ws_->spectrum_width();
  const std::size_t ny = grid().ny();
  const Complex I(0.0, 1.0);
  Spectrum out(a_.size());
  for (std::size_t j = 0; j < ny; ++j) {
    const double ky = ws_->deriv_ky(j);
    for (std::size_t i = 0; i < w; ++i) {
      const std::size_t k = j * w + i;
      out[k] = I * (ws_->deriv_kx(i) * a_[k] + ky * b_[k]);
    }
  }
  return out;
}

ScalarField SpectralOps::divergence(const ScalarField& vx, const ScalarField& vy) {
  return transform_.inverse(divergence_spectrum(vx, vy));
}

ScalarField SpectralOps::laplacian(const ScalarField& f) {
  transform_.forward(f.values(), a_);
  const auto k_sq = ws_->k_sq();
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] *= -k_sq[k];
  return transform_.inverse(a_);
}

std::pair<ScalarField, ScalarField> gradient(const ScalarField& f, const SpectralWorkspace& ws) {
  SpectralOps ops(borrow(ws));
  return ops.gradient(f);
}

ScalarField divergence(const ScalarField& vx, const ScalarField& vy, const SpectralWorkspace& ws) {
  SpectralOps ops(borrow(ws));
  return ops.divergence(vx, vy);
}

ScalarField laplacian(const ScalarField& f, const SpectralWorkspace& ws) {
  SpectralOps ops(borrow(ws));
  return ops.laplacian(f);
}

}  // namespace pmcov
