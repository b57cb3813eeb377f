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
#include <numbers>
#include <vector>

#include "pmcov/grid.hpp"
#include "pmcov/rng.hpp"

namespace pmcov::test {

inline constexpr double kPi = std::numbers::pi;

/// One Fourier term a * cos(kx x + ky y + phase) with integer mode numbers.
struct Mode {
  int mx;
  int my;
  double amp;
  double phase;
};

/// Random modes with |mx|, |my| <= max_mode.
inline std::vector<Mode> random_modes(Rng& rng, int max_mode, int count) {
  std::vector<Mode> out;
  for (int n = 0; n < count; ++n) {
    const int mx = static_cast<int>(rng.uniform() * (2 * max_mode + 1)) - max_mode;
    const int my = static_cast<int>(rng.uniform() * (2 * max_mode + 1)) - max_mode;
    out.push_back({mx, my, 2.0 * rng.uniform() - 1.0, 2.0 * kPi * rng.uniform()});
  }
  return out;
}

inline ScalarField synthesize(const Grid2D& g, const std::vector<Mode>& modes, double offset = 0.0) {
  ScalarField f(g, offset);
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const Point p = g.center(i, j);
      double v = 0.0;
      for (const Mode& m : modes) {
        v += m.amp * std::cos(2.0 * kPi * (m.mx * p.x / g.lx() + m.my * p.y / g.ly()) + m.phase);
      }
      f(i, j) += v;
    }
  }
  return f;
}

template <typename F>
ScalarField sample(const Grid2D& g, F&& fn) {
  ScalarField f(g);
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const Point p = g.center(i, j);
      f(i, j) = fn(p.x, p.y);
    }
  }
  return f;
}

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline ScalarField random_field(const Grid2D& g, Rng& rng, double lo = -1.0, double hi = 1.0) {
  ScalarField f(g);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = lo + (hi - lo) * rng.uniform();
  return f;
}

/// Desk-scale grid: 64 x 64 cells of unit size.
inline Grid2D desk_grid() { return Grid2D(64, 64, 64.0, 64.0); }

}  // namespace pmcov::test
