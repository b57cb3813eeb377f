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

// Command-line front end. Talks to the simulator only through the C API.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmcov/pmcov.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int exit_code(pmcov_status st) {
  switch (st) {
    case PMCOV_OK:
      return kExitOk;
    case PMCOV_ERR_CONFIG:
    case PMCOV_ERR_ARGUMENT:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

int report(pmcov_status st) {
  const std::string key = pmcov_last_error_key();
  if (key.empty()) {
    std::fprintf(stderr, "error: %s\n", pmcov_last_error());
  } else {
    std::fprintf(stderr, "error in config key '%s': %s\n", key.c_str(), pmcov_last_error());
  }
  return exit_code(st);
}

struct ConfigHandle {
  pmcov_config* ptr = nullptr;
  ~ConfigHandle() { pmcov_config_free(ptr); }
};

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  std::size_t workers = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool needs_config) {
  auto* c = cmd->add_option("-c,--config", o.config_path, "JSON config file (defaults when omitted)");
  if (needs_config) c->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Base seed (overrides run.seed)");
  cmd->add_option("--override", o.overrides, "Dotted key=value override, repeatable")->take_all();
  cmd->add_option("-o,--out-dir", o.out_dir, "Output directory");
  cmd->add_option("-w,--workers", o.workers, "Worker threads (0 = hardware concurrency)");
}

// Loads config, applies overrides then seed.
pmcov_status load(const CommonOptions& o, ConfigHandle& h) {
  std::vector<const char*> assignments;
  for (const auto& ov : o.overrides) assignments.push_back(ov.c_str());
  const char* path = o.config_path.empty() ? nullptr : o.config_path.c_str();
  pmcov_status st = pmcov_config_build(path, assignments.data(), assignments.size(), &h.ptr);
  if (st != PMCOV_OK) return st;
  if (o.seed) st = pmcov_config_set_seed(h.ptr, *o.seed);
  return st;
}

int cmd_run(const CommonOptions& o) {
  ConfigHandle h;
  if (auto st = load(o, h); st != PMCOV_OK) return report(st);
  pmcov_result* r = nullptr;
  if (auto st = pmcov_run(h.ptr, o.out_dir.c_str(), &r); st != PMCOV_OK) return report(st);
  const double* series = pmcov_result_error_series(r);
  std::printf("E(0)     = %.10g\n", series[0]);
  std::printf("E(final) = %.10g\n", pmcov_result_final_error(r));
  std::printf("runtime  = %.3f s\n", pmcov_result_elapsed_seconds(r));
  std::printf("output   = %s\n", pmcov_result_output_dir(r));
  pmcov_result_free(r);
  return kExitOk;
}

int cmd_compare(const CommonOptions& o, const std::string& methods, std::size_t n_runs) {
  ConfigHandle h;
  if (auto st = load(o, h); st != PMCOV_OK) return report(st);
  pmcov_summary* s = nullptr;
  const char* m = methods.empty() ? nullptr : methods.c_str();
  if (auto st = pmcov_compare(h.ptr, m, n_runs, o.workers, o.out_dir.c_str(), &s); st != PMCOV_OK) {
    return report(st);
  }
  const std::size_t n = pmcov_summary_length(s);
  std::printf("%-32s %16s %16s %8s\n", "method", "mean E(final)", "std E(final)", "failed");
  int code = kExitOk;
  for (std::size_t i = 0; i < pmcov_summary_n_methods(s); ++i) {
    const std::size_t failed = pmcov_summary_n_failed(s, i);
    std::printf("%-32s %16.8g %16.8g %8zu\n", pmcov_summary_method(s, i), pmcov_summary_mean(s, i)[n - 1],
                pmcov_summary_std(s, i)[n - 1], failed);
    if (failed > 0) code = kExitRuntime;
  }
  std::printf("summary  = %s/summary.csv\n", o.out_dir.c_str());
  pmcov_summary_free(s);
  return code;
}

int cmd_snapshot(const CommonOptions& o, const std::vector<std::size_t>& steps) {
  ConfigHandle h;
  if (auto st = load(o, h); st != PMCOV_OK) return report(st);
  const std::size_t* p = steps.empty() ? nullptr : steps.data();
  if (auto st = pmcov_snapshot(h.ptr, p, steps.size(), o.out_dir.c_str()); st != PMCOV_OK) return report(st);
  std::printf("snapshots written to %s\n", o.out_dir.c_str());
  return kExitOk;
}

int cmd_defaults() {
  ConfigHandle h;
  if (auto st = pmcov_config_default(&h.ptr); st != PMCOV_OK) return report(st);
  char* text = nullptr;
  if (auto st = pmcov_config_to_json(h.ptr, &text); st != PMCOV_OK) return report(st);
  std::printf("%s\n", text);
  pmcov_string_free(text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot ergodic coverage driven by anisotropic diffusion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pmcov_version());

  CommonOptions run_opts, cmp_opts, snap_opts;
  std::string methods;
  std::size_t n_runs = 0;
  std::vector<std::size_t> steps;

  auto* run = app.add_subcommand("run", "Run one simulation");
  add_common(run, run_opts, true);

  auto* cmp = app.add_subcommand("compare", "Compare methods over several seeds");
  add_common(cmp, cmp_opts, true);
  cmp->add_option("--methods", methods, "Comma-separated methods (pm,hedac,smc); default compare.methods");
  cmp->add_option("--runs", n_runs, "Runs per method; default compare.n_runs");

  auto* snap = app.add_subcommand("snapshot", "Dump fields and trajectories at given steps");
  add_common(snap, snap_opts, true);
  snap->add_option("--steps", steps, "Step indices; default snapshot.steps")->delimiter(',');

  app.add_subcommand("defaults", "Print the default configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (run->parsed()) return cmd_run(run_opts);
  if (cmp->parsed()) return cmd_compare(cmp_opts, methods, n_runs);
  if (snap->parsed()) return cmd_snapshot(snap_opts, steps);
  return cmd_defaults();
}
