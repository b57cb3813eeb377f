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

#include "pmcov/pmcov.h"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "pmcov/config.hpp"
#include "pmcov/errors.hpp"
#include "pmcov/grid_io.hpp"
#include "pmcov/output.hpp"
#include "pmcov/sim.hpp"

struct pmcov_config {
  nlohmann::json doc;  // user document, overrides applied
  pmcov::AppConfig cfg;
};

struct pmcov_result {
  pmcov::RunResult result;
  std::vector<double> final_positions;
  std::string output_dir;
};

struct pmcov_summary {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> std;
  std::vector<std::size_t> failed;
  std::size_t length = 0;
};

struct pmcov_field {
  pmcov::ScalarField field;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_key;

pmcov_status fail(pmcov_status code, const std::string& msg, const std::string& key = {}) {
  g_error = msg;
  g_error_key = key;
  return code;
}

// Maps the active exception onto a status code.
pmcov_status translate() {
  try {
    throw;
  } catch (const pmcov::ConfigError& e) {
    return fail(PMCOV_ERR_CONFIG, e.what(), e.key());
  } catch (const pmcov::SolverError& e) {
    return fail(PMCOV_ERR_RUNTIME, e.what());
  } catch (const pmcov::IoError& e) {
    return fail(PMCOV_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PMCOV_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(PMCOV_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(PMCOV_ERR_RUNTIME, "unknown error");
  }
}

template <typename F>
pmcov_status guarded(F&& f) {
  g_error.clear();
  g_error_key.clear();
  try {
    f();
    return PMCOV_OK;
  } catch (...) {
    return translate();
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    if (!part.empty()) out.push_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void append(pmcov_summary& out, const pmcov::ExperimentSummary& s, const std::string& suffix) {
  for (const auto& m : s.methods) {
    out.labels.push_back(m.method + suffix);
    out.mean.push_back(m.mean_error);
    out.std.push_back(m.std_error);
    out.failed.push_back(m.n_failed);
    out.length = m.mean_error.size();
  }
}

void write_experiment(const std::filesystem::path& dir, const pmcov::AppConfig& app,
                      const std::vector<pmcov::Method>& methods, const pmcov::ExperimentSummary& s) {
  std::filesystem::create_directories(dir / "runs");
  pmcov::write_summary_csv(dir / "summary.csv", s);
  for (std::size_t m = 0; m < s.methods.size(); ++m) {
    for (const auto& run : s.methods[m].runs) {
      if (!run.result) continue;
      pmcov::SimConfig sim = app.sim;
      sim.method = methods[m];
      sim.seed = run.seed;
      pmcov::write_run(dir / "runs", sim, *run.result, app.write_fields);
    }
  }
}

}  // namespace

extern "C" {

const char* pmcov_version(void) { return "0.1.0"; }
const char* pmcov_last_error(void) { return g_error.c_str(); }
const char* pmcov_last_error_key(void) { return g_error_key.c_str(); }
void pmcov_string_free(char* s) { std::free(s); }

pmcov_status pmcov_config_default(pmcov_config** out) {
  if (out == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null output pointer");
  return guarded([&] { *out = new pmcov_config{nlohmann::json::object(), pmcov::AppConfig{}}; });
}

pmcov_status pmcov_config_parse(const char* json_text, pmcov_config** out) {
  if (json_text == nullptr || out == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    nlohmann::json doc = nlohmann::json::parse(json_text, nullptr, false);
    if (doc.is_discarded()) throw pmcov::ConfigError("", "config text is not valid JSON");
    auto cfg = pmcov::parse_config(doc);
    *out = new pmcov_config{std::move(doc), std::move(cfg)};
  });
}

pmcov_status pmcov_config_load(const char* path, pmcov_config** out) {
  if (path == nullptr || out == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    nlohmann::json doc = pmcov::read_config_document(path);
    auto cfg = pmcov::parse_config(doc);
    *out = new pmcov_config{std::move(doc), std::move(cfg)};
  });
}

pmcov_status pmcov_config_build(const char* path, const char* const* assignments, size_t n_assignments,
                                pmcov_config** out) {
  if (out == nullptr || (assignments == nullptr && n_assignments > 0)) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    nlohmann::json doc = path != nullptr ? pmcov::read_config_document(path) : nlohmann::json::object();
    for (size_t i = 0; i < n_assignments; ++i) {
      if (assignments[i] == nullptr) throw std::invalid_argument("null override");
      pmcov::apply_override(doc, assignments[i]);
    }
    auto cfg = pmcov::parse_config(doc);
    *out = new pmcov_config{std::move(doc), std::move(cfg)};
  });
}

pmcov_status pmcov_config_override(pmcov_config* cfg, const char* assignment) {
  if (cfg == nullptr || assignment == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    nlohmann::json doc = cfg->doc;
    pmcov::apply_override(doc, assignment);
    cfg->cfg = pmcov::parse_config(doc);
    cfg->doc = std::move(doc);
  });
}

pmcov_status pmcov_config_set_seed(pmcov_config* cfg, uint64_t seed) {
  if (cfg == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null config");
  return guarded([&] {
    cfg->doc["run"]["seed"] = seed;
    cfg->cfg.sim.seed = seed;
  });
}

pmcov_status pmcov_config_to_json(const pmcov_config* cfg, char** out_json) {
  if (cfg == nullptr || out_json == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out_json = dup_string(pmcov::to_json(cfg->cfg).dump(2)); });
}

pmcov_status pmcov_config_hash(const pmcov_config* cfg, char** out_hash) {
  if (cfg == nullptr || out_hash == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out_hash = dup_string(pmcov::config_hash(cfg->cfg.sim)); });
}

void pmcov_config_free(pmcov_config* cfg) { delete cfg; }

pmcov_status pmcov_run(const pmcov_config* cfg, const char* out_dir, pmcov_result** out) {
  if (cfg == nullptr || out == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto r = std::make_unique<pmcov_result>();
    r->result = pmcov::run(cfg->cfg.sim);
    if (!r->result.trajectories.empty()) {
      for (const auto& p : r->result.trajectories.back().positions) {
        r->final_positions.push_back(p.x);
        r->final_positions.push_back(p.y);
      }
    }
    if (out_dir != nullptr) {
      r->output_dir = pmcov::write_run(out_dir, cfg->cfg.sim, r->result, cfg->cfg.write_fields).string();
    }
    *out = r.release();
  });
}

size_t pmcov_result_length(const pmcov_result* r) { return r ? r->result.error_series.size() : 0; }
const double* pmcov_result_error_series(const pmcov_result* r) { return r ? r->result.error_series.data() : nullptr; }
double pmcov_result_final_error(const pmcov_result* r) {
  return r && !r->result.error_series.empty() ? r->result.error_series.back() : 0.0;
}
double pmcov_result_elapsed_seconds(const pmcov_result* r) { return r ? r->result.elapsed_seconds : 0.0; }
size_t pmcov_result_n_agents(const pmcov_result* r) { return r ? r->final_positions.size() / 2 : 0; }
const double* pmcov_result_final_positions(const pmcov_result* r) { return r ? r->final_positions.data() : nullptr; }
const char* pmcov_result_output_dir(const pmcov_result* r) { return r ? r->output_dir.c_str() : ""; }
void pmcov_result_free(pmcov_result* r) { delete r; }

pmcov_status pmcov_compare(const pmcov_config* cfg, const char* methods_csv, size_t n_runs, size_t workers,
                           const char* out_dir, pmcov_summary** out) {
  if (cfg == nullptr || out == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    pmcov::AppConfig app = cfg->cfg;
    if (methods_csv != nullptr) {
      app.compare.methods = split_csv(methods_csv);
      try {
        (void)pmcov::compare_methods(app);
      } catch (const std::invalid_argument& e) {
        throw pmcov::ConfigError("compare.methods", e.what());
      }
    }
    if (n_runs > 0) app.compare.n_runs = n_runs;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    auto summary = std::make_unique<pmcov_summary>();
    if (app.sweep.parameter.empty()) {
      const auto methods = pmcov::compare_methods(app);
      const auto s = pmcov::experiment(app.sim, methods, app.compare.n_runs,
                                       app.compare.shared_initial_positions, workers);
      if (out_dir != nullptr) write_experiment(out_dir, app, methods, s);
      append(*summary, s, "");
    } else {
      pmcov::ExperimentSummary combined;
      combined.time_step = app.sim.control.dt;
      for (std::size_t i = 0; i < app.sweep.values.size(); ++i) {
        nlohmann::json doc = cfg->doc;
        doc["sweep"] = {{"parameter", ""}, {"values", nlohmann::json::array()}};
        pmcov::apply_override(doc, app.sweep.parameter + "=" + app.sweep.values[i].dump());
        pmcov::AppConfig point = pmcov::parse_config(doc);
        point.compare = app.compare;
        point.sim.seed = app.sim.seed;
        const auto methods = pmcov::compare_methods(point);
        auto s = pmcov::experiment(point.sim, methods, point.compare.n_runs,
                                   point.compare.shared_initial_positions, workers);
        if (out_dir != nullptr) {
          write_experiment(std::filesystem::path(out_dir) / ("sweep_" + std::to_string(i)), point, methods, s);
        }
        const std::string suffix = "@" + app.sweep.parameter + "=" + app.sweep.values[i].dump();
        append(*summary, s, suffix);
        for (auto& m : s.methods) {
          m.method += suffix;
          combined.methods.push_back(std::move(m));
        }
      }
      if (out_dir != nullptr) pmcov::write_summary_csv(std::filesystem::path(out_dir) / "summary.csv", combined);
    }
    *out = summary.release();
  });
}

size_t pmcov_summary_n_methods(const pmcov_summary* s) { return s ? s->labels.size() : 0; }
const char* pmcov_summary_method(const pmcov_summary* s, size_t m) {
  return s && m < s->labels.size() ? s->labels[m].c_str() : "";
}
size_t pmcov_summary_length(const pmcov_summary* s) { return s ? s->length : 0; }
const double* pmcov_summary_mean(const pmcov_summary* s, size_t m) {
  return s && m < s->mean.size() ? s->mean[m].data() : nullptr;
}
const double* pmcov_summary_std(const pmcov_summary* s, size_t m) {
  return s && m < s->std.size() ? s->std[m].data() : nullptr;
}
size_t pmcov_summary_n_failed(const pmcov_summary* s, size_t m) {
  return s && m < s->failed.size() ? s->failed[m] : 0;
}
void pmcov_summary_free(pmcov_summary* s) { delete s; }

pmcov_status pmcov_snapshot(const pmcov_config* cfg, const size_t* steps, size_t n_steps, const char* out_dir) {
  if (cfg == nullptr || out_dir == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<std::size_t> wanted =
        steps != nullptr ? std::vector<std::size_t>(steps, steps + n_steps) : cfg->cfg.snapshot.steps;
    if (wanted.empty()) throw pmcov::ConfigError("snapshot.steps", "no steps requested");
    for (auto s : wanted) {
      if (s > cfg->cfg.sim.n_steps) {
        throw pmcov::ConfigError("snapshot.steps",
                                 "step " + std::to_string(s) + " exceeds run.n_steps (" +
                                     std::to_string(cfg->cfg.sim.n_steps) + ")");
      }
    }
    const std::set<std::size_t> want(wanted.begin(), wanted.end());
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw pmcov::IoError("cannot create " + dir.string() + ": " + ec.message());

    pmcov::SimConfig sim = cfg->cfg.sim;
    sim.n_steps = *want.rbegin();
    std::vector<pmcov::TrajectoryFrame> frames;
    auto observer = [&](const pmcov::StepView& v) {
      if (!want.count(v.step)) return;
      const std::string stem = "step_" + std::to_string(v.step) + "_";
      pmcov::write_grid(dir / (stem + "mu.grid"), v.mu.field());
      pmcov::write_grid(dir / (stem + "c.grid"), v.c);
      pmcov::write_grid(dir / (stem + "e.grid"), v.e);
      pmcov::write_grid(dir / (stem + "g.grid"), v.g);
    };
    const pmcov::RunResult r = pmcov::run(sim, observer);
    pmcov::write_trajectory_csv(dir / "trajectory.csv", r.trajectories);
  });
}

pmcov_status pmcov_field_read(const char* path, pmcov_field** out) {
  if (path == nullptr || out == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = new pmcov_field{pmcov::read_grid(path)}; });
}

pmcov_status pmcov_density_load(const char* path, pmcov_field** out) {
  if (path == nullptr || out == nullptr) return fail(PMCOV_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = new pmcov_field{pmcov::load_density(path).field()}; });
}

size_t pmcov_field_nx(const pmcov_field* f) { return f ? f->field.grid().nx() : 0; }
size_t pmcov_field_ny(const pmcov_field* f) { return f ? f->field.grid().ny() : 0; }
double pmcov_field_lx(const pmcov_field* f) { return f ? f->field.grid().lx() : 0.0; }
double pmcov_field_ly(const pmcov_field* f) { return f ? f->field.grid().ly() : 0.0; }
const double* pmcov_field_values(const pmcov_field* f) { return f ? f->field.values().data() : nullptr; }
void pmcov_field_free(pmcov_field* f) { delete f; }

}  // extern "C"
