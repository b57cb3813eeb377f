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

#include "pmcov/agents.hpp"

#include <cmath>
#include <stdexcept>

#include "pmcov/errors.hpp"

namespace pmcov {

namespace {

// Folds x into [0, length] by mirroring; returns true when an odd number of
// reflections occurred (velocity sign flips).
bool reflect(double& x, double length) {
  if (x >= 0.0 && x <= length) return false;
  if (!std::isfinite(x)) throw SolverError("agent position became non-finite");
  if (x < 0.0 && x >= -length) {
    x = -x;
    return true;
  }
  if (x > length && x <= 2.0 * length) {
    x = 2.0 * length - x;
    return true;
  }
  const double period = 2.0 * length;
  double m = std::fmod(x, period);
  if (m < 0.0) m += period;
  if (m <= length) {
    x = m;
    return false;
  }
  x = period - m;
  return true;
}

std::size_t wrap(long k, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((k % m) + m) % m);
}

}  // namespace

void ControlParams::validate() const {
  if (!(v_m > 0.0) || !std::isfinite(v_m)) throw std::invalid_argument("v_m must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(eps_grad > 0.0)) throw std::invalid_argument("eps_grad must be positive");
}

Vec2 sample_gradient(const ScalarField& gx, const ScalarField& gy, Point p) {
  require_same_grid(gx, gy, "sample_gradient");
  const Grid2D& g = gx.grid();
  // Cell centers sit at (i + 1/2) h.
  const double u = p.x / g.hx() - 0.5;
  const double v = p.y / g.hy() - 0.5;
  const double fu = std::floor(u);
  const double fv = std::floor(v);
  const double tx = u - fu;
  const double ty = v - fv;
  const std::size_t i0 = wrap(static_cast<long>(fu), g.nx());
  const std::size_t j0 = wrap(static_cast<long>(fv), g.ny());
  const std::size_t i1 = wrap(static_cast<long>(fu) + 1, g.nx());
  const std::size_t j1 = wrap(static_cast<long>(fv) + 1, g.ny());
  auto lerp2 = [&](const ScalarField& f) {
    return (1.0 - tx) * (1.0 - ty) * f(i0, j0) + tx * (1.0 - ty) * f(i1, j0) +
           (1.0 - tx) * ty * f(i0, j1) + tx * ty * f(i1, j1);
  };
  return {lerp2(gx), lerp2(gy)};
}

Vec2 control(AgentState& agent, Vec2 grad, const ControlParams& params) {
  const double n = grad.norm();
  if (n > params.eps_grad && std::isfinite(n)) {
    agent.last_heading = {grad.x / n, grad.y / n};
  }
  return params.v_m * agent.last_heading;
}

AgentState step(const AgentState& agent, Vec2 u, double dt, const Grid2D& grid) {
  AgentState next = agent;
  Point p = agent.position + dt * u;
  Vec2 dir = u;
  if (reflect(p.x, grid.lx())) dir.x = -dir.x;
  if (reflect(p.y, grid.ly())) dir.y = -dir.y;
  next.position = p;
  const double n = dir.norm();
  if (n > 0.0) next.last_heading = {dir.x / n, dir.y / n};
  return next;
}

}  // namespace pmcov
