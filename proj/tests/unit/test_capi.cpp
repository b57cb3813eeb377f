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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "doctest.h"
#include "pmcov/pmcov.h"

namespace fs = std::filesystem;

namespace {

struct Cfg {
  pmcov_config* ptr = nullptr;
  ~Cfg() { pmcov_config_free(ptr); }
};

fs::path scratch(const char* name) {
  const fs::path p = fs::temp_directory_path() / "pmcov_test_capi" / name;
  fs::remove_all(p);
  return p;
}

std::size_t count_lines(const fs::path& p) {
  std::ifstream in(p);
  return static_cast<std::size_t>(std::count(std::istreambuf_iterator<char>(in), {}, '\n'));
}

pmcov_status build(Cfg& c, std::initializer_list<const char*> assignments) {
  const std::vector<const char*> a(assignments);
  return pmcov_config_build(nullptr, a.data(), a.size(), &c.ptr);
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and defaults") {
  CHECK(std::strlen(pmcov_version()) > 0);
  Cfg c;
  REQUIRE(pmcov_config_default(&c.ptr) == PMCOV_OK);
  char* text = nullptr;
  REQUIRE(pmcov_config_to_json(c.ptr, &text) == PMCOV_OK);
  CHECK(std::string(text).find("\"K\": 0.1") != std::string::npos);
  pmcov_string_free(text);
}

TEST_CASE("config errors carry the dotted key") {
  Cfg a;
  CHECK(build(a, {"diffusion.K=0"}) == PMCOV_ERR_CONFIG);
  CHECK(std::string(pmcov_last_error_key()) == "diffusion.K");
  CHECK(a.ptr == nullptr);

  Cfg b;
  CHECK(pmcov_config_parse("{\"run\": {\"n_agentz\": 3}}", &b.ptr) == PMCOV_ERR_CONFIG);
  CHECK(std::string(pmcov_last_error_key()) == "run.n_agentz");

  Cfg c;
  CHECK(pmcov_config_parse("{not json", &c.ptr) == PMCOV_ERR_CONFIG);
  CHECK(std::strlen(pmcov_last_error()) > 0);

  Cfg d;
  CHECK(pmcov_config_load("/nonexistent/pmcov.json", &d.ptr) == PMCOV_ERR_CONFIG);
}

TEST_CASE("build validates once after every assignment") {
  Cfg c;
  REQUIRE(build(c, {"run.n_agents=2", "run.initial_positions=[[0.1,0.1],[0.9,0.9]]"}) == PMCOV_OK);
  CHECK(pmcov_config_override(c.ptr, "run.n_agents=3") == PMCOV_ERR_CONFIG);
  CHECK(std::string(pmcov_last_error_key()) == "run.initial_positions");
  CHECK(pmcov_config_override(c.ptr, "diffusion.K=0.5") == PMCOV_OK);
}

TEST_CASE("hash excludes the seed") {
  Cfg a, b;
  REQUIRE(build(a, {"run.n_steps=5"}) == PMCOV_OK);
  REQUIRE(build(b, {"run.n_steps=5"}) == PMCOV_OK);
  REQUIRE(pmcov_config_set_seed(b.ptr, 999) == PMCOV_OK);
  char *ha = nullptr, *hb = nullptr;
  REQUIRE(pmcov_config_hash(a.ptr, &ha) == PMCOV_OK);
  REQUIRE(pmcov_config_hash(b.ptr, &hb) == PMCOV_OK);
  CHECK(std::string(ha) == hb);
  CHECK(std::strlen(ha) == 16);
  pmcov_string_free(ha);
  pmcov_string_free(hb);
}

TEST_CASE("run exposes the error series and writes its outputs") {
  Cfg c;
  REQUIRE(build(c, {"run.n_steps=20", "run.n_agents=3"}) == PMCOV_OK);
  const fs::path out = scratch("run");
  pmcov_result* r = nullptr;
  REQUIRE(pmcov_run(c.ptr, out.string().c_str(), &r) == PMCOV_OK);
  REQUIRE(pmcov_result_length(r) == 21);
  const double* e = pmcov_result_error_series(r);
  CHECK(e[20] == pmcov_result_final_error(r));
  CHECK(pmcov_result_n_agents(r) == 3);
  const double* p = pmcov_result_final_positions(r);
  for (std::size_t k = 0; k < 6; ++k) CHECK((p[k] >= 0.0 && p[k] <= 64.0));
  CHECK(pmcov_result_elapsed_seconds(r) >= 0.0);
  const fs::path dir = pmcov_result_output_dir(r);
  CHECK(count_lines(dir / "error.csv") == 22);
  CHECK(count_lines(dir / "trajectory.csv") == 1 + 21 * 3);
  CHECK(fs::exists(dir / "config.json"));
  CHECK(fs::exists(dir / "g.grid"));
  pmcov_result_free(r);

  pmcov_result* q = nullptr;
  REQUIRE(pmcov_run(c.ptr, nullptr, &q) == PMCOV_OK);
  CHECK(std::string(pmcov_result_output_dir(q)).empty());
  pmcov_result_free(q);
}

TEST_CASE("compare summarizes every method") {
  Cfg c;
  REQUIRE(build(c, {"run.n_steps=10", "output.write_fields=false"}) == PMCOV_OK);
  const fs::path out = scratch("compare");
  pmcov_summary* s = nullptr;
  REQUIRE(pmcov_compare(c.ptr, nullptr, 2, 1, out.string().c_str(), &s) == PMCOV_OK);
  REQUIRE(pmcov_summary_n_methods(s) == 3);
  CHECK(std::string(pmcov_summary_method(s, 0)) == "pm");
  CHECK(std::string(pmcov_summary_method(s, 2)) == "smc");
  CHECK(pmcov_summary_length(s) == 11);
  for (std::size_t m = 0; m < 3; ++m) {
    CHECK(pmcov_summary_n_failed(s, m) == 0);
    CHECK(std::isfinite(pmcov_summary_mean(s, m)[10]));
    CHECK(pmcov_summary_std(s, m)[10] >= 0.0);
  }
  CHECK(count_lines(out / "summary.csv") == 1 + 3 * 11);
  pmcov_summary_free(s);

  pmcov_summary* t = nullptr;
  CHECK(pmcov_compare(c.ptr, "pm,heat", 1, 1, nullptr, &t) == PMCOV_ERR_CONFIG);
  CHECK(std::string(pmcov_last_error_key()) == "compare.methods");
}

TEST_CASE("snapshot dumps fields that read back as densities") {
  Cfg c;
  REQUIRE(build(c, {"run.n_steps=12"}) == PMCOV_OK);
  const fs::path out = scratch("snapshot");
  const std::size_t steps[] = {0, 12};
  REQUIRE(pmcov_snapshot(c.ptr, steps, 2, out.string().c_str()) == PMCOV_OK);
  for (const char* name : {"step_0_mu.grid", "step_0_c.grid", "step_12_e.grid", "step_12_g.grid", "trajectory.csv"}) {
    CHECK(fs::exists(out / name));
  }
  pmcov_field* f = nullptr;
  REQUIRE(pmcov_density_load((out / "step_0_mu.grid").string().c_str(), &f) == PMCOV_OK);
  CHECK(pmcov_field_nx(f) == 64);
  CHECK(pmcov_field_ly(f) == 64.0);
  double mass = 0.0;
  for (std::size_t k = 0; k < 64 * 64; ++k) mass += pmcov_field_values(f)[k];
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  pmcov_field_free(f);

  const std::size_t beyond[] = {13};
  CHECK(pmcov_snapshot(c.ptr, beyond, 1, out.string().c_str()) == PMCOV_ERR_CONFIG);
  CHECK(std::string(pmcov_last_error_key()) == "snapshot.steps");

  pmcov_field* missing = nullptr;
  CHECK(pmcov_field_read("/nonexistent/x.grid", &missing) == PMCOV_ERR_IO);
}

TEST_CASE("null arguments are rejected") {
  CHECK(pmcov_config_default(nullptr) == PMCOV_ERR_ARGUMENT);
  CHECK(pmcov_config_override(nullptr, "diffusion.K=1") == PMCOV_ERR_ARGUMENT);
  pmcov_result* r = nullptr;
  CHECK(pmcov_run(nullptr, nullptr, &r) == PMCOV_ERR_ARGUMENT);
  Cfg c;
  const char* bad[] = {nullptr};
  CHECK(pmcov_config_build(nullptr, bad, 1, &c.ptr) == PMCOV_ERR_ARGUMENT);
  pmcov_config_free(nullptr);
  pmcov_result_free(nullptr);
  pmcov_summary_free(nullptr);
  pmcov_field_free(nullptr);
  pmcov_string_free(nullptr);
}

}  // TEST_SUITE
