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

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "pmcov/config.hpp"
#include "pmcov/errors.hpp"

using namespace pmcov;
using nlohmann::json;

namespace {

std::string parse_error_key(const json& doc) {
  try {
    (void)parse_config(doc);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

std::string override_error_key(const std::string& assignment) {
  json doc = json::object();
  try {
    apply_override(doc, assignment);
    (void)parse_config(doc);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults carry the reference parameters") {
  const AppConfig c = parse_config(json::object());
  CHECK(c.sim.nx == 64);
  CHECK(c.sim.lx == 64.0);
  CHECK(c.sim.diffusion.K == 0.1);
  CHECK(c.sim.diffusion.alpha == 0.5);
  CHECK(c.sim.diffusion.dt == 0.05);
  CHECK(c.sim.diffusion.tau == 0.9);
  CHECK(c.sim.diffusion.inner_steps() == 18);
  CHECK(c.sim.control.v_m == 1.0);
  CHECK(c.sim.n_agents == 10);
  CHECK(c.sim.n_steps == 1000);
  CHECK(method_name(c.sim.method) == "pm");
  CHECK(c.hedac.beta == 1.0);
  CHECK(c.smc.modes == 25);
  CHECK(c.compare.n_runs == 5);
  CHECK(c.compare.methods == std::vector<std::string>{"pm", "hedac", "smc"});
}

TEST_CASE("to_json round trips and reproduces the run bit for bit") {
  AppConfig c = parse_config(json::object());
  c.sim.n_steps = 30;
  c.sim.seed = 77;
  c.sim.diffusion.K = 0.25;
  const AppConfig back = parse_config(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK(to_json(parse_config(json::object())) == default_config_json());
  CHECK(run(back.sim).error_series == run(c.sim).error_series);
}

TEST_CASE("unknown keys are rejected with their dotted path") {
  CHECK(parse_error_key({{"diffusion", {{"KK", 1.0}}}}) == "diffusion.KK");
  CHECK(parse_error_key({{"bogus", 1}}) == "bogus");
  CHECK(parse_error_key({{"scenario", {{"circle_square", {{"radius", 0.2}}}}}}) == "scenario.circle_square.radius");
}

TEST_CASE("wrong types are rejected with their dotted path") {
  CHECK(parse_error_key({{"diffusion", {{"K", "small"}}}}) == "diffusion.K");
  CHECK(parse_error_key({{"run", {{"n_agents", -3}}}}) == "run.n_agents");
  CHECK(parse_error_key({{"run", {{"n_agents", 2.5}}}}) == "run.n_agents");
  CHECK(parse_error_key({{"diffusion", {{"warm_start", 1}}}}) == "diffusion.warm_start");
  CHECK(parse_error_key({{"diffusion", 3}}) == "diffusion");
  CHECK(parse_error_key({{"scenario", {{"circle_square", {{"center", {0.5}}}}}}}) == "scenario.circle_square.center");
}

TEST_CASE("invalid values are rejected with their dotted path") {
  CHECK(parse_error_key({{"diffusion", {{"K", 0.0}}}}) == "diffusion.K");
  CHECK(parse_error_key({{"diffusion", {{"tau", 0.01}}}}) == "diffusion.tau");
  CHECK(parse_error_key({{"method", {{"name", "heat"}}}}) == "method.name");
  CHECK(parse_error_key({{"scenario", {{"name", "donut"}}}}) == "scenario.name");
  CHECK(parse_error_key({{"scenario", {{"gaussian_stripe", {{"stripe_axis", "z"}}}}}}) ==
        "scenario.gaussian_stripe.stripe_axis");
  CHECK(parse_error_key({{"compare", {{"methods", {"pm", "heat"}}}}}) == "compare.methods");
  CHECK(parse_error_key({{"compare", {{"n_runs", 0}}}}) == "compare.n_runs");
  CHECK(parse_error_key({{"snapshot", {{"steps", {-1}}}}}) == "snapshot.steps");
  CHECK(parse_error_key({{"snapshot", {{"steps", {2000}}}}}) == "<none>");
  CHECK(parse_error_key({{"grid", {{"nx", 9}}}}) == "grid");
}

TEST_CASE("overrides parse JSON values and fall back to strings") {
  json doc = json::object();
  apply_override(doc, "control.v_m=2.0");
  apply_override(doc, "method.name=hedac");
  apply_override(doc, "scenario.name=\"bimodal_gaussian\"");
  apply_override(doc, "run.initial_positions=[[0.1,0.2],[0.3,0.4]]");
  apply_override(doc, "run.n_agents=2");
  const AppConfig c = parse_config(doc);
  CHECK(c.sim.control.v_m == 2.0);
  CHECK(method_name(c.sim.method) == "hedac");
  CHECK(c.sim.scenario.name == "bimodal_gaussian");
  REQUIRE(c.sim.initial_positions.size() == 2);
  CHECK(c.sim.initial_positions[1] == Point{0.3, 0.4});
}

TEST_CASE("malformed overrides name the assignment") {
  CHECK(override_error_key("diffusion.K") == "diffusion.K");
  CHECK(override_error_key("=3") == "=3");
  CHECK(override_error_key("diffusion..K=3") == "diffusion..K");
  CHECK(override_error_key("diffusion.K=-1") == "diffusion.K");
  CHECK(override_error_key("diffusion.K.x=1") == "diffusion.K");
  CHECK(override_error_key("diffusion.Q=1") == "diffusion.Q");
}

TEST_CASE("the hash ignores the seed and tracks every other setting") {
  SimConfig a;
  SimConfig b = a;
  b.seed = 123;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b = a;
  b.diffusion.K = 0.2;
  CHECK(config_hash(a) != config_hash(b));
  b = a;
  b.method = SmcMethod{};
  CHECK(config_hash(a) != config_hash(b));
  b = a;
  b.scenario.name = "bimodal_gaussian";
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("methods resolve with the baseline parameters") {
  AppConfig c = parse_config({{"method", {{"hedac", {{"beta", 2.5}}}, {"smc", {{"modes", 12}}}}}});
  CHECK(std::get<HedacMethod>(resolve_method(c, "hedac")).beta == 2.5);
  CHECK(std::get<SmcMethod>(resolve_method(c, "smc")).modes == 12);
  CHECK(std::holds_alternative<PeronaMalikMethod>(resolve_method(c, "pm")));
  CHECK_THROWS_AS(resolve_method(c, "heat"), std::invalid_argument);
  CHECK(compare_methods(c).size() == 3);
}

TEST_CASE("config files") {
  const auto dir = std::filesystem::temp_directory_path() / "pmcov_test_config";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "ok.json") << R"({"diffusion": {"K": 0.3}, "run": {"n_steps": 12}})";
    std::ofstream(dir / "bad.json") << R"({"diffusion": {"K": 0.3},})";
  }
  const AppConfig c = parse_config(read_config_document(dir / "ok.json"));
  CHECK(c.sim.diffusion.K == 0.3);
  CHECK(c.sim.n_steps == 12);
  CHECK_THROWS_AS(read_config_document(dir / "bad.json"), ConfigError);
  CHECK_THROWS_AS(read_config_document(dir / "missing.json"), ConfigError);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
