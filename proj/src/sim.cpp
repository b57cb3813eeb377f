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

#include "pmcov/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pmcov/errors.hpp"
#include "pmcov/rng.hpp"

namespace pmcov {

namespace {

Covariance scale(const Covariance& c, double lx, double ly) {
  return {c.xx * lx * lx, c.xy * lx * ly, c.yy * ly * ly};
}

Point scale(Point p, double lx, double ly) { return {p.x * lx, p.y * ly}; }

/// Produces the ascent potential g and its gradient for one method.
class PotentialBuilder {
 public:
  PotentialBuilder(const SimConfig& cfg, const Grid2D& grid)
      : cfg_(cfg), ws_(std::make_shared<SpectralWorkspace>(grid)), solver_(ws_), g_(grid), gx_(grid), gy_(grid) {
    if (const auto* smc = std::get_if<SmcMethod>(&cfg.method)) {
      smc_.emplace(grid, smc->modes, smc->weight_exponent);
    }
  }

  void update(const ScalarField& mu, const ScalarField& c, const ScalarField& e) {
    if (smc_) {
      g_ = smc_->potential(mu, c);
      g_ *= -1.0;
      std::tie(gx_, gy_) = smc_->ascent_gradient(mu, c);
      return;
    }
    ScalarField start = e;
    if (cfg_.warm_start && prev_e_) {
      for (std::size_t k = 0; k < start.size(); ++k) start[k] = g_[k] + (e[k] - (*prev_e_)[k]);
    }
    if (const auto* hedac = std::get_if<HedacMethod>(&cfg_.method)) {
      g_ = solver_.hedac_potential(start, hedac->beta, cfg_.diffusion.tau);
    } else {
      g_ = solver_.diffuse(start, cfg_.diffusion);
    }
    if (cfg_.warm_start) prev_e_ = e;
    std::tie(gx_, gy_) = solver_.ops().gradient(g_);
  }

  const ScalarField& g() const { return g_; }
  const ScalarField& gx() const { return gx_; }
  const ScalarField& gy() const { return gy_; }

 private:
  const SimConfig& cfg_;
  std::shared_ptr<SpectralWorkspace> ws_;
  DiffusionSolver solver_;
  std::optional<SmcBasis> smc_;
  ScalarField g_, gx_, gy_;
  std::optional<ScalarField> prev_e_;
};

std::string diagnostics(const ScalarField& e, const ScalarField& g) {
  std::ostringstream os;
  os << "max|e|=" << e.max_abs() << ", max|g|=" << g.max_abs();
  return os.str();
}

}  // namespace

TargetDensity make_density(const ScenarioConfig& s, const Grid2D& grid) {
  const double lx = grid.lx();
  const double ly = grid.ly();
  if (s.name == "circle_square") {
    const auto& p = s.circle_square;
    return circle_square(grid, p.square_half_width * lx, p.ring_inner_radius * lx, p.ring_outer_radius * lx,
                         scale(p.center, lx, ly));
  }
  if (s.name == "gaussian_stripe") {
    const auto& p = s.gaussian_stripe;
    const double hw = p.stripe_half_width * (p.stripe_axis == StripeAxis::Y ? ly : lx);
    return gaussian_stripe(grid, scale(p.mean, lx, ly), scale(p.covariance, lx, ly), p.stripe_axis, hw);
  }
  if (s.name == "bimodal_gaussian") {
    const auto& p = s.bimodal_gaussian;
    return bimodal_gaussian(grid, {scale(p.means[0], lx, ly), scale(p.means[1], lx, ly)},
                            {scale(p.covariances[0], lx, ly), scale(p.covariances[1], lx, ly)});
  }
  if (s.name == "file") return load_density(s.path, grid);
  throw std::invalid_argument("unknown scenario '" + s.name + "'");
}

void SimConfig::validate() const {
  try {
    Grid2D(nx, ny, lx, ly);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("grid", e.what());
  }
  const auto check = [](bool ok, const char* key, const char* msg) {
    if (!ok) throw ConfigError(key, msg);
  };
  check(diffusion.K > 0.0 && std::isfinite(diffusion.K), "diffusion.K", "must be positive");
  check(diffusion.alpha >= 0.0 && std::isfinite(diffusion.alpha), "diffusion.alpha", "must be non-negative");
  check(diffusion.dt > 0.0 && std::isfinite(diffusion.dt), "diffusion.dt", "must be positive");
  check(diffusion.tau >= diffusion.dt && std::isfinite(diffusion.tau), "diffusion.tau", "must be at least diffusion.dt");
  check(control.v_m > 0.0 && std::isfinite(control.v_m), "control.v_m", "must be positive");
  check(control.dt > 0.0 && std::isfinite(control.dt), "control.dt", "must be positive");
  check(control.eps_grad > 0.0, "control.eps_grad", "must be positive");
  check(n_agents >= 1, "run.n_agents", "must be at least 1");
  check(trajectory_stride >= 1, "output.trajectory_stride", "must be at least 1");
  if (const auto* h = std::get_if<HedacMethod>(&method)) {
    check(h->beta > 0.0 && std::isfinite(h->beta), "method.hedac.beta", "must be positive");
  }
  if (const auto* s = std::get_if<SmcMethod>(&method)) {
    check(s->weight_exponent > 0.0, "method.smc.weight_exponent", "must be positive");
    check(s->modes >= 1 && s->modes <= std::min(nx, ny), "method.smc.modes", "must be in [1, min(nx, ny)]");
  }
  if (!initial_positions.empty()) {
    check(initial_positions.size() == n_agents, "run.initial_positions", "must list exactly n_agents points");
    for (const Point& p : initial_positions) {
      check(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0, "run.initial_positions",
            "points must lie in the unit square (fractions of the domain)");
    }
  }
  try {
    (void)make_density(scenario, grid());
  } catch (const IoError& e) {
    throw ConfigError("scenario.path", e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scenario", e.what());
  }
}

std::vector<Point> initial_positions(const SimConfig& config) {
  std::vector<Point> out;
  out.reserve(config.n_agents);
  if (!config.initial_positions.empty()) {
    for (const Point& p : config.initial_positions) out.push_back(scale(p, config.lx, config.ly));
    return out;
  }
  Rng rng(derive_seed(config.seed, 0));
  for (std::size_t i = 0; i < config.n_agents; ++i) {
    const double x = rng.uniform() * config.lx;
    const double y = rng.uniform() * config.ly;
    out.push_back({x, y});
  }
  return out;
}

RunResult run(const SimConfig& config, const StepObserver& observer) {
  config.validate();
  const auto t_start = std::chrono::steady_clock::now();
  const Grid2D grid = config.grid();
  const TargetDensity mu = make_density(config.scenario, grid);
  const double dt = config.control.dt;

  std::vector<AgentState> agents(config.n_agents);
  const std::vector<Point> start = initial_positions(config);
  Rng heading_rng(derive_seed(config.seed, 1));
  for (std::size_t i = 0; i < agents.size(); ++i) {
    agents[i].position = start[i];
    agents[i].last_heading = heading_rng.unit_vector();
  }

  RunResult result;
  result.initial_positions = start;
  result.error_series.reserve(config.n_steps + 1);

  CoverageAccumulator acc(grid, config.n_agents);
  std::vector<Point> positions(agents.size());
  auto gather = [&] {
    for (std::size_t i = 0; i < agents.size(); ++i) positions[i] = agents[i].position;
  };
  auto record = [&](std::size_t s) {
    if (s % config.trajectory_stride == 0 || s == config.n_steps) result.trajectories.push_back({s, positions});
  };

  gather();
  acc.deposit(positions, dt);
  record(0);

  PotentialBuilder potential(config, grid);
  for (std::size_t s = 0;; ++s) {
    ScalarField c = empirical_density(acc);
    ErrorField e = error_field(c, mu);
    const double err = global_error(e);
    if (!std::isfinite(err)) throw SolverError("step " + std::to_string(s) + ": coverage error is non-finite");
    result.error_series.push_back(err);

    try {
      potential.update(mu.field(), c, e.field);
    } catch (const SolverError& ex) {
      throw SolverError("step " + std::to_string(s) + ": " + ex.what() + " (" +
                        diagnostics(e.field, potential.g()) + ")");
    }

    if (observer) {
      observer(StepView{s, static_cast<double>(s) * dt, err, acc, mu, c, e.field, potential.g(), agents});
    }
    if (s == config.n_steps) {
      result.mu = mu.field();
      result.c = std::move(c);
      result.e = std::move(e.field);
      result.g = potential.g();
      break;
    }

    for (AgentState& a : agents) {
      const Vec2 grad = sample_gradient(potential.gx(), potential.gy(), a.position);
      const Vec2 u = control(a, grad, config.control);
      a = step(a, u, dt, grid);
    }
    gather();
    acc.deposit(positions, dt);
    record(s + 1);
  }

  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index, std::size_t method_index,
                       bool shared_initial_positions) {
  const std::uint64_t s = derive_seed(base_seed, run_index);
  return shared_initial_positions ? s : derive_seed(s, method_index + 1);
}

ExperimentSummary experiment(const SimConfig& base, const std::vector<Method>& methods, std::size_t n_runs,
                             bool shared_initial_positions, std::size_t workers) {
  if (n_runs == 0) throw std::invalid_argument("experiment needs at least one run");
  if (methods.empty()) throw std::invalid_argument("experiment needs at least one method");
  base.validate();

  ExperimentSummary summary;
  summary.time_step = base.control.dt;
  summary.methods.resize(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    summary.methods[m].method = method_name(methods[m]);
    summary.methods[m].runs.resize(n_runs);
  }

  const std::size_t n_jobs = methods.size() * n_runs;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < n_jobs; job = next++) {
      const std::size_t m = job / n_runs;
      const std::size_t r = job % n_runs;
      SimConfig cfg = base;
      cfg.method = methods[m];
      cfg.seed = run_seed(base.seed, r, m, shared_initial_positions);
      RunOutcome& out = summary.methods[m].runs[r];
      out.run_index = r;
      out.seed = cfg.seed;
      try {
        out.result = run(cfg);
      } catch (const std::exception& ex) {
        out.error = ex.what();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(workers, n_jobs));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  const std::size_t n_points = base.n_steps + 1;
  for (MethodSummary& ms : summary.methods) {
    ms.mean_error.assign(n_points, 0.0);
    ms.std_error.assign(n_points, 0.0);
    std::size_t ok = 0;
    for (const RunOutcome& o : ms.runs) {
      if (!o.result) {
        ++ms.n_failed;
        continue;
      }
      ++ok;
      for (std::size_t s = 0; s < n_points; ++s) ms.mean_error[s] += o.result->error_series[s];
    }
    if (ok == 0) continue;
    for (double& v : ms.mean_error) v /= static_cast<double>(ok);
    if (ok > 1) {
      for (const RunOutcome& o : ms.runs) {
        if (!o.result) continue;
        for (std::size_t s = 0; s < n_points; ++s) {
          const double d = o.result->error_series[s] - ms.mean_error[s];
          ms.std_error[s] += d * d;
        }
      }
      for (double& v : ms.std_error) v = std::sqrt(v / static_cast<double>(ok - 1));
    }
  }
  return summary;
}

}  // namespace pmcov
