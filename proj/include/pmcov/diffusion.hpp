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

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pmcov/density.hpp"
#include "pmcov/spectral.hpp"

namespace pmcov {

/// Parameters of the anisotropic smoothing operator.
struct DiffusionParams {
  double K = 0.1;      ///< edge threshold: D(K) = 1/2
  double alpha = 0.5;  ///< implicit stabilizing diffusivity
  double dt = 0.05;    ///< inner time step
  double tau = 0.9;    ///< total diffusion time

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
  /// round(tau / dt).
  std::size_t inner_steps() const;
};

struct PeronaMalikMethod {};

struct HedacMethod {
  double beta = 1.0;
};

struct SmcMethod {
  double weight_exponent = 1.5;
  std::size_t modes = 25;  ///< cosine modes per axis, 0..modes-1
};

using Method = std::variant<PeronaMalikMethod, HedacMethod, SmcMethod>;

/// "pm", "hedac" or "smc".
std::string method_name(const Method& m);
/// Default-parameterized method for a name; throws std::invalid_argument otherwise.
Method method_from_name(const std::string& name);

/// 1 / (1 + (s/K)^2).
inline double pm_diffusivity(double grad_mag, double K) {
  const double r = grad_mag / K;
  return 1.0 / (1.0 + r * r);
}

ScalarField diffusivity(const ScalarField& grad_mag, double K);

/// Perona-Malik smoothing with semi-implicit spectral stepping, plus the
/// constant-diffusivity closed form. One instance per run.
class DiffusionSolver {
 public:
  explicit DiffusionSolver(std::shared_ptr<const SpectralWorkspace> ws);

  /// div(D(|grad g|) grad g).
  ScalarField pm_rhs(const ScalarField& g, double K);

  /// g_hat' = (g_hat + dt * f_hat) / (1 + dt * alpha * k^2).
  ScalarField semi_implicit_step(const ScalarField& g, const DiffusionParams& p);

  /// inner_steps() semi-implicit steps starting from e. Throws SolverError
  /// when the iterate stops being finite.
  ScalarField diffuse(const ScalarField& e, const DiffusionParams& p);

  /// Exact linear diffusion: g_hat = e_hat * exp(-beta * k^2 * tau).
  ScalarField hedac_potential(const ScalarField& e, double beta, double tau);

  SpectralOps& ops() { return ops_; }

 private:
  void step_spectrum(Spectrum& g_hat, const DiffusionParams& p, std::size_t step_index);

  SpectralOps ops_;
  ScalarField gx_;
  ScalarField gy_;
};

ScalarField pm_rhs(const ScalarField& g, double K, const SpectralWorkspace& ws);
ScalarField semi_implicit_step(const ScalarField& g, const DiffusionParams& p, const SpectralWorkspace& ws);
ScalarField diffuse(const ScalarField& e, const DiffusionParams& p, const SpectralWorkspace& ws);
ScalarField hedac_potential(const ScalarField& e, double beta, const DiffusionParams& p,
                            const SpectralWorkspace& ws);

/// Cosine-series potential for spectral multiscale coverage on [0,lx]x[0,ly].
///
/// Basis f_k(x,y) = cos(k1*pi*x/lx) * cos(k2*pi*y/ly) / h_k with unit L2 norm,
/// weights Lambda_k = (1 + |k|^2)^(-s) over the integer mode index k.
/// Coefficients use midpoint quadrature at cell centers, which is exactly
/// orthogonal for k < n.
class SmcBasis {
 public:
  SmcBasis(const Grid2D& grid, std::size_t modes, double weight_exponent);

  std::size_t modes() const { return modes_; }
  double weight(std::size_t k1, std::size_t k2) const { return weights_[k2 * modes_ + k1]; }

  /// Basis coefficients of a field, indexed [k2 * modes + k1].
  std::vector<double> coefficients(const ScalarField& f) const;

  /// sum_k Lambda_k (c_k - mu_k) f_k. Agents descend this.
  ScalarField potential(const ScalarField& mu, const ScalarField& c) const;

  /// Analytic gradient of the negated potential at cell centers.
  std::pair<ScalarField, ScalarField> ascent_gradient(const ScalarField& mu, const ScalarField& c) const;

 private:
  std::vector<double> weighted_mismatch(const ScalarField& mu, const ScalarField& c) const;

  Grid2D grid_;
  std::size_t modes_;
  std::vector<double> weights_;
  // [k * n + i]: normalized cos and its derivative along each axis.
  std::vector<double> cos_x_, dcos_x_, cos_y_, dcos_y_;
};

/// smc potential for a target and coverage, see SmcBasis::potential.
ScalarField smc_potential(const TargetDensity& mu, const ScalarField& c, double weight_exponent,
                          const SpectralWorkspace& ws, std::size_t modes = 25);

}  // namespace pmcov
