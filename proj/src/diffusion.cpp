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

#include "pmcov/diffusion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pmcov/errors.hpp"

namespace pmcov {

namespace {

std::shared_ptr<const SpectralWorkspace> borrow(const SpectralWorkspace& ws) {
  return {&ws, [](const SpectralWorkspace*) {}};
}

bool finite(const Spectrum& s) {
  for (const Complex& z : s) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

}  // namespace

void DiffusionParams::validate() const {
  if (!(K > 0.0) || !std::isfinite(K)) throw std::invalid_argument("K must be positive");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be non-negative");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(tau >= dt) || !std::isfinite(tau)) throw std::invalid_argument("tau must be at least dt");
}

std::size_t DiffusionParams::inner_steps() const {
  const double n = std::round(tau / dt);
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

std::string method_name(const Method& m) {
  struct Visitor {
    std::string operator()(const PeronaMalikMethod&) const { return "pm"; }
    std::string operator()(const HedacMethod&) const { return "hedac"; }
    std::string operator()(const SmcMethod&) const { return "smc"; }
  };
  return std::visit(Visitor{}, m);
}

Method method_from_name(const std::string& name) {
  if (name == "pm") return PeronaMalikMethod{};
  if (name == "hedac") return HedacMethod{};
  if (name == "smc") return SmcMethod{};
  throw std::invalid_argument("unknown method '" + name + "' (expected pm, hedac or smc)");
}

ScalarField diffusivity(const ScalarField& grad_mag, double K) {
  ScalarField d(grad_mag.grid());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = pm_diffusivity(grad_mag[k], K);
  return d;
}

DiffusionSolver::DiffusionSolver(std::shared_ptr<const SpectralWorkspace> ws)
    : ops_(std::move(ws)), gx_(ops_.grid()), gy_(ops_.grid()) {}

ScalarField DiffusionSolver::pm_rhs(const ScalarField& g, double K) {
  auto [gx, gy] = ops_.gradient(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double d = pm_diffusivity(std::hypot(gx[k], gy[k]), K);
    gx[k] *= d;
    gy[k] *= d;
  }
  return ops_.divergence(gx, gy);
}

void DiffusionSolver::step_spectrum(Spectrum& g_hat, const DiffusionParams& p, std::size_t step_index) {
  auto [gx, gy] = ops_.gradient(g_hat);
  for (std::size_t k = 0; k < gx.size(); ++k) {
    const double d = pm_diffusivity(std::hypot(gx[k], gy[k]), p.K);
    gx[k] *= d;
    gy[k] *= d;
  }
  const Spectrum f_hat = ops_.divergence_spectrum(gx, gy);
  const auto k_sq = ops_.workspace().k_sq();
  for (std::size_t k = 0; k < g_hat.size(); ++k) {
    g_hat[k] = (g_hat[k] + p.dt * f_hat[k]) / (1.0 + p.dt * p.alpha * k_sq[k]);
  }
  if (!finite(g_hat)) {
    throw SolverError("diffusion iterate became non-finite at inner step " + std::to_string(step_index));
  }
}

ScalarField DiffusionSolver::semi_implicit_step(const ScalarField& g, const DiffusionParams& p) {
  p.validate();
  Spectrum g_hat = ops_.transform().forward(g);
  step_spectrum(g_hat, p, 0);
  return ops_.transform().inverse(g_hat);
}

ScalarField DiffusionSolver::diffuse(const ScalarField& e, const DiffusionParams& p) {
  p.validate();
  Spectrum g_hat = ops_.transform().forward(e);
  const std::size_t n = p.inner_steps();
  for (std::size_t s = 0; s < n; ++s) step_spectrum(g_hat, p, s);
  ScalarField g = ops_.transform().inverse(g_hat);
  if (!g.all_finite()) throw SolverError("diffused field is non-finite");
  return g;
}

ScalarField DiffusionSolver::hedac_potential(const ScalarField& e, double beta, double tau) {
  if (!(beta > 0.0)) throw std::invalid_argument("hedac beta must be positive");
  Spectrum e_hat = ops_.transform().forward(e);
  const auto k_sq = ops_.workspace().k_sq();
  for (std::size_t k = 0; k < e_hat.size(); ++k) e_hat[k] *= std::exp(-beta * k_sq[k] * tau);
  return ops_.transform().inverse(e_hat);
}

ScalarField pm_rhs(const ScalarField& g, double K, const SpectralWorkspace& ws) {
  DiffusionSolver s(borrow(ws));
  return s.pm_rhs(g, K);
}

ScalarField semi_implicit_step(const ScalarField& g, const DiffusionParams& p, const SpectralWorkspace& ws) {
  DiffusionSolver s(borrow(ws));
  return s.semi_implicit_step(g, p);
}

ScalarField diffuse(const ScalarField& e, const DiffusionParams& p, const SpectralWorkspace& ws) {
  DiffusionSolver s(borrow(ws));
  return s.diffuse(e, p);
}

ScalarField hedac_potential(const ScalarField& e, double beta, const DiffusionParams& p,
                            const SpectralWorkspace& ws) {
  DiffusionSolver s(borrow(ws));
  return s.hedac_potential(e, beta, p.tau);
}

SmcBasis::SmcBasis(const Grid2D& grid, std::size_t modes, double weight_exponent)
    : grid_(grid), modes_(modes) {
  if (modes == 0 || modes > grid.nx() || modes > grid.ny()) {
    throw std::invalid_argument("smc mode count must be in [1, min(nx, ny)]");
  }
  if (!(weight_exponent > 0.0)) throw std::invalid_argument("smc weight exponent must be positive");

  auto tables = [modes](std::size_t n, double h, double length, std::vector<double>& c,
                        std::vector<double>& dc) {
    c.resize(modes * n);
    dc.resize(modes * n);
    for (std::size_t k = 0; k < modes; ++k) {
      const double w = static_cast<double>(k) * std::numbers::pi / length;
      const double norm = 1.0 / std::sqrt(k == 0 ? length : 0.5 * length);
      for (std::size_t i = 0; i < n; ++i) {
        const double x = (static_cast<double>(i) + 0.5) * h;
        c[k * n + i] = norm * std::cos(w * x);
        dc[k * n + i] = -norm * w * std::sin(w * x);
      }
    }
  };
  tables(grid.nx(), grid.hx(), grid.lx(), cos_x_, dcos_x_);
  tables(grid.ny(), grid.hy(), grid.ly(), cos_y_, dcos_y_);

  weights_.resize(modes * modes);
  for (std::size_t k2 = 0; k2 < modes; ++k2) {
    for (std::size_t k1 = 0; k1 < modes; ++k1) {
      const double k_sq = static_cast<double>(k1 * k1 + k2 * k2);
      weights_[k2 * modes + k1] = std::pow(1.0 + k_sq, -weight_exponent);
    }
  }
}

std::vector<double> SmcBasis::coefficients(const ScalarField& f) const {
  const std::size_t nx = grid_.nx();
  const std::size_t ny = grid_.ny();
  // Partial sums over x first: a[k1 * ny + j].
  std::vector<double> a(modes_ * ny, 0.0);
  for (std::size_t k1 = 0; k1 < modes_; ++k1) {
    const double* cx = &cos_x_[k1 * nx];
    for (std::size_t j = 0; j < ny; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < nx; ++i) s += f(i, j) * cx[i];
      a[k1 * ny + j] = s;
    }
  }
  std::vector<double> coef(modes_ * modes_, 0.0);
  for (std::size_t k2 = 0; k2 < modes_; ++k2) {
    const double* cy = &cos_y_[k2 * ny];
    for (std::size_t k1 = 0; k1 < modes_; ++k1) {
      double s = 0.0;
      for (std::size_t j = 0; j < ny; ++j) s += a[k1 * ny + j] * cy[j];
      coef[k2 * modes_ + k1] = s * grid_.cell_area();
    }
  }
  return coef;
}

std::vector<double> SmcBasis::weighted_mismatch(const ScalarField& mu, const ScalarField& c) const {
  require_same_grid(mu, c, "smc");
  if (!(mu.grid() == grid_)) throw std::invalid_argument("smc: field grid differs from basis grid");
  std::vector<double> w = coefficients(c);
  const std::vector<double> m = coefficients(mu);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = weights_[k] * (w[k] - m[k]);
  return w;
}

ScalarField SmcBasis::potential(const ScalarField& mu, const ScalarField& c) const {
  const std::vector<double> w = weighted_mismatch(mu, c);
  const std::size_t nx = grid_.nx();
  const std::size_t ny = grid_.ny();
  // b[k2 * nx + i] = sum_k1 w[k2, k1] cos_x[k1, i]
  std::vector<double> b(modes_ * nx, 0.0);
  for (std::size_t k2 = 0; k2 < modes_; ++k2)
    for (std::size_t k1 = 0; k1 < modes_; ++k1) {
      const double wk = w[k2 * modes_ + k1];
      for (std::size_t i = 0; i < nx; ++i) b[k2 * nx + i] += wk * cos_x_[k1 * nx + i];
    }
  ScalarField phi(grid_);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t k2 = 0; k2 < modes_; ++k2) {
      const double cy = cos_y_[k2 * ny + j];
      for (std::size_t i = 0; i < nx; ++i) phi(i, j) += cy * b[k2 * nx + i];
    }
  return phi;
}

std::pair<ScalarField, ScalarField> SmcBasis::ascent_gradient(const ScalarField& mu, const ScalarField& c) const {
  const std::vector<double> w = weighted_mismatch(mu, c);
  const std::size_t nx = grid_.nx();
  const std::size_t ny = grid_.ny();
  std::vector<double> b(modes_ * nx, 0.0);
  std::vector<double> db(modes_ * nx, 0.0);
  for (std::size_t k2 = 0; k2 < modes_; ++k2)
    for (std::size_t k1 = 0; k1 < modes_; ++k1) {
      const double wk = w[k2 * modes_ + k1];
      for (std::size_t i = 0; i < nx; ++i) {
        b[k2 * nx + i] += wk * cos_x_[k1 * nx + i];
        db[k2 * nx + i] += wk * dcos_x_[k1 * nx + i];
      }
    }
  std::pair<ScalarField, ScalarField> out{ScalarField(grid_), ScalarField(grid_)};
  auto& [gx, gy] = out;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t k2 = 0; k2 < modes_; ++k2) {
      const double cy = cos_y_[k2 * ny + j];
      const double dcy = dcos_y_[k2 * ny + j];
      for (std::size_t i = 0; i < nx; ++i) {
        gx(i, j) -= cy * db[k2 * nx + i];
        gy(i, j) -= dcy * b[k2 * nx + i];
      }
    }
  return out;
}

ScalarField smc_potential(const TargetDensity& mu, const ScalarField& c, double weight_exponent,
                          const SpectralWorkspace& ws, std::size_t modes) {
  return SmcBasis(ws.grid(), modes, weight_exponent).potential(mu.field(), c);
}

}  // namespace pmcov
