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

#include "pmcov/grid.hpp"

namespace pmcov {

struct AgentState {
  Point position;
  Vec2 last_heading{1.0, 0.0};  ///< unit vector
};

struct ControlParams {
  double v_m = 1.0;
  double dt = 0.05;
  double eps_grad = 1e-12;

  void validate() const;
};

/// Bilinear interpolation between cell centers, wrapping periodically.
Vec2 sample_gradient(const ScalarField& gx, const ScalarField& gy, Point p);

/// Constant-speed steering along grad. Below eps_grad the agent keeps its last
/// heading; otherwise last_heading is set to grad/|grad|.
Vec2 control(AgentState& agent, Vec2 grad, const ControlParams& params);

/// Forward Euler move with specular reflection at the walls. The returned
/// state's heading is the direction of travel after reflection. Throws
/// SolverError when the new position is not finite.
AgentState step(const AgentState& agent, Vec2 u, double dt, const Grid2D& grid);

}  // namespace pmcov
