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

#include "pmcov/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pmcov/errors.hpp"

namespace pmcov {

using nlohmann::json;

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }
json cov_json(const Covariance& c) { return json::array({c.xx, c.xy, c.yy}); }

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Overlays `user` onto `base`, rejecting keys that `base` does not have.
void merge(json& base, const json& user, const std::string& path) {
  if (!user.is_object()) throw ConfigError(path, "expected an object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string key = join(path, it.key());
    if (!base.contains(it.key())) throw ConfigError(key, "unknown key");
    json& slot = base[it.key()];
    if (slot.is_object()) {
      merge(slot, it.value(), key);
    } else {
      slot = it.value();
    }
  }
}

double num(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key, "expected a number");
  return j.get<double>();
}

std::size_t count(const json& j, const std::string& key) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)) {
    throw ConfigError(key, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

bool boolean(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw ConfigError(key, "expected true or false");
  return j.get<bool>();
}

std::string str(const json& j, const std::string& key) {
  if (!j.is_string()) throw ConfigError(key, "expected a string");
  return j.get<std::string>();
}

Point point(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(key, "expected [x, y]");
  return {num(j[0], key), num(j[1], key)};
}

Covariance covariance(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(key, "expected [xx, xy, yy]");
  return {num(j[0], key), num(j[1], key), num(j[2], key)};
}

}  // namespace

json default_config_json() { return to_json(AppConfig{}); }

json to_json(const AppConfig& cfg) {
  const SimConfig& s = cfg.sim;
  const auto& sc = s.scenario;
  json methods = json::array();
  for (const auto& m : cfg.compare.methods) methods.push_back(m);
  json positions = json::array();
  for (const Point& p : s.initial_positions) positions.push_back(point_json(p));
  json steps = json::array();
  for (auto st : cfg.snapshot.steps) steps.push_back(st);

  HedacMethod hedac = cfg.hedac;
  SmcMethod smc = cfg.smc;
  if (const auto* h = std::get_if<HedacMethod>(&s.method)) hedac = *h;
  if (const auto* m = std::get_if<SmcMethod>(&s.method)) smc = *m;

  json doc;
  doc["grid"] = {{"nx", s.nx}, {"ny", s.ny}, {"lx", s.lx}, {"ly", s.ly}};
  doc["scenario"] = {
      {"name", sc.name},
      {"circle_square",
       {{"square_half_width", sc.circle_square.square_half_width},
        {"ring_inner_radius", sc.circle_square.ring_inner_radius},
        {"ring_outer_radius", sc.circle_square.ring_outer_radius},
        {"center", point_json(sc.circle_square.center)}}},
      {"gaussian_stripe",
       {{"mean", point_json(sc.gaussian_stripe.mean)},
        {"covariance", cov_json(sc.gaussian_stripe.covariance)},
        {"stripe_axis", sc.gaussian_stripe.stripe_axis == StripeAxis::Y ? "y" : "x"},
        {"stripe_half_width", sc.gaussian_stripe.stripe_half_width}}},
      {"bimodal_gaussian",
       {{"means", json::array({point_json(sc.bimodal_gaussian.means[0]), point_json(sc.bimodal_gaussian.means[1])})},
        {"covariances", json::array({cov_json(sc.bimodal_gaussian.covariances[0]),
                                     cov_json(sc.bimodal_gaussian.covariances[1])})}}},
      {"file", {{"path", sc.path}}}};
  doc["method"] = {{"name", method_name(s.method)},
                   {"hedac", {{"beta", hedac.beta}}},
                   {"smc", {{"weight_exponent", smc.weight_exponent}, {"modes", smc.modes}}}};
  doc["diffusion"] = {{"K", s.diffusion.K},
                      {"alpha", s.diffusion.alpha},
                      {"dt", s.diffusion.dt},
                      {"tau", s.diffusion.tau},
                      {"warm_start", s.warm_start}};
  doc["control"] = {{"v_m", s.control.v_m}, {"dt", s.control.dt}, {"eps_grad", s.control.eps_grad}};
  doc["run"] = {{"n_agents", s.n_agents}, {"n_steps", s.n_steps}, {"seed", s.seed}, {"initial_positions", positions}};
  doc["output"] = {{"trajectory_stride", s.trajectory_stride}, {"write_fields", cfg.write_fields}};
  doc["compare"] = {{"methods", methods},
                    {"n_runs", cfg.compare.n_runs},
                    {"shared_initial_positions", cfg.compare.shared_initial_positions}};
  doc["sweep"] = {{"parameter", cfg.sweep.parameter}, {"values", cfg.sweep.values}};
  doc["snapshot"] = {{"steps", steps}};
  return doc;
}

AppConfig parse_config(const json& user) {
  json d = default_config_json();
  merge(d, user, "");

  AppConfig cfg;
  SimConfig& s = cfg.sim;
  s.nx = count(d["grid"]["nx"], "grid.nx");
  s.ny = count(d["grid"]["ny"], "grid.ny");
  s.lx = num(d["grid"]["lx"], "grid.lx");
  s.ly = num(d["grid"]["ly"], "grid.ly");

  const json& sc = d["scenario"];
  s.scenario.name = str(sc["name"], "scenario.name");
  {
    const json& c = sc["circle_square"];
    auto& p = s.scenario.circle_square;
    p.square_half_width = num(c["square_half_width"], "scenario.circle_square.square_half_width");
    p.ring_inner_radius = num(c["ring_inner_radius"], "scenario.circle_square.ring_inner_radius");
    p.ring_outer_radius = num(c["ring_outer_radius"], "scenario.circle_square.ring_outer_radius");
    p.center = point(c["center"], "scenario.circle_square.center");
  }
  {
    const json& g = sc["gaussian_stripe"];
    auto& p = s.scenario.gaussian_stripe;
    p.mean = point(g["mean"], "scenario.gaussian_stripe.mean");
    p.covariance = covariance(g["covariance"], "scenario.gaussian_stripe.covariance");
    const std::string axis = str(g["stripe_axis"], "scenario.gaussian_stripe.stripe_axis");
    if (axis != "x" && axis != "y") throw ConfigError("scenario.gaussian_stripe.stripe_axis", "expected \"x\" or \"y\"");
    p.stripe_axis = axis == "y" ? StripeAxis::Y : StripeAxis::X;
    p.stripe_half_width = num(g["stripe_half_width"], "scenario.gaussian_stripe.stripe_half_width");
  }
  {
    const json& b = sc["bimodal_gaussian"];
    auto& p = s.scenario.bimodal_gaussian;
    if (!b["means"].is_array() || b["means"].size() != 2) throw ConfigError("scenario.bimodal_gaussian.means", "expected two points");
    if (!b["covariances"].is_array() || b["covariances"].size() != 2) {
      throw ConfigError("scenario.bimodal_gaussian.covariances", "expected two covariances");
    }
    for (std::size_t k = 0; k < 2; ++k) {
      p.means[k] = point(b["means"][k], "scenario.bimodal_gaussian.means");
      p.covariances[k] = covariance(b["covariances"][k], "scenario.bimodal_gaussian.covariances");
    }
  }
  s.scenario.path = str(sc["file"]["path"], "scenario.file.path");
  if (s.scenario.name != "circle_square" && s.scenario.name != "gaussian_stripe" &&
      s.scenario.name != "bimodal_gaussian" && s.scenario.name != "file") {
    throw ConfigError("scenario.name", "unknown scenario '" + s.scenario.name + "'");
  }

  const json& m = d["method"];
  const std::string mname = str(m["name"], "method.name");
  cfg.hedac.beta = num(m["hedac"]["beta"], "method.hedac.beta");
  cfg.smc.weight_exponent = num(m["smc"]["weight_exponent"], "method.smc.weight_exponent");
  cfg.smc.modes = count(m["smc"]["modes"], "method.smc.modes");
  try {
    s.method = resolve_method(cfg, mname);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("method.name", e.what());
  }

  s.diffusion.K = num(d["diffusion"]["K"], "diffusion.K");
  s.diffusion.alpha = num(d["diffusion"]["alpha"], "diffusion.alpha");
  s.diffusion.dt = num(d["diffusion"]["dt"], "diffusion.dt");
  s.diffusion.tau = num(d["diffusion"]["tau"], "diffusion.tau");
  s.warm_start = boolean(d["diffusion"]["warm_start"], "diffusion.warm_start");

  s.control.v_m = num(d["control"]["v_m"], "control.v_m");
  s.control.dt = num(d["control"]["dt"], "control.dt");
  s.control.eps_grad = num(d["control"]["eps_grad"], "control.eps_grad");

  s.n_agents = count(d["run"]["n_agents"], "run.n_agents");
  s.n_steps = count(d["run"]["n_steps"], "run.n_steps");
  {
    const json& seed = d["run"]["seed"];
    if (!seed.is_number_unsigned()) throw ConfigError("run.seed", "expected a non-negative integer");
    s.seed = seed.get<std::uint64_t>();
  }
  if (!d["run"]["initial_positions"].is_array()) throw ConfigError("run.initial_positions", "expected a list of [x, y]");
  for (const json& p : d["run"]["initial_positions"]) s.initial_positions.push_back(point(p, "run.initial_positions"));

  s.trajectory_stride = count(d["output"]["trajectory_stride"], "output.trajectory_stride");
  cfg.write_fields = boolean(d["output"]["write_fields"], "output.write_fields");

  const json& cmp = d["compare"];
  if (!cmp["methods"].is_array()) throw ConfigError("compare.methods", "expected a list of method names");
  cfg.compare.methods.clear();
  for (const json& n : cmp["methods"]) cfg.compare.methods.push_back(str(n, "compare.methods"));
  try {
    (void)compare_methods(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("compare.methods", e.what());
  }
  cfg.compare.n_runs = count(cmp["n_runs"], "compare.n_runs");
  if (cfg.compare.n_runs == 0) throw ConfigError("compare.n_runs", "must be at least 1");
  cfg.compare.shared_initial_positions = boolean(cmp["shared_initial_positions"], "compare.shared_initial_positions");

  cfg.sweep.parameter = str(d["sweep"]["parameter"], "sweep.parameter");
  if (!d["sweep"]["values"].is_array()) throw ConfigError("sweep.values", "expected a list");
  cfg.sweep.values = d["sweep"]["values"].get<std::vector<json>>();

  if (!d["snapshot"]["steps"].is_array()) throw ConfigError("snapshot.steps", "expected a list of step indices");
  cfg.snapshot.steps.clear();
  for (const json& st : d["snapshot"]["steps"]) cfg.snapshot.steps.push_back(count(st, "snapshot.steps"));

  s.validate();
  return cfg;
}

json read_config_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", path.string() + ": " + e.what());
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(assignment, "override must look like key.path=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError(key, "empty path component in override");
    if (!node->is_object()) {
      if (!node->is_null()) throw ConfigError(key, "override path crosses a non-object value");
      *node = json::object();
    }
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

std::string config_hash(const SimConfig& sim) {
  AppConfig app;
  app.sim = sim;
  app.sim.seed = 0;
  json doc = to_json(app);
  // Only the simulation part identifies a run.
  for (const char* k : {"compare", "sweep", "snapshot", "output"}) doc.erase(k);
  doc["output"] = {{"trajectory_stride", sim.trajectory_stride}};
  const std::string text = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Method resolve_method(const AppConfig& cfg, const std::string& name) {
  Method m = method_from_name(name);
  if (std::holds_alternative<HedacMethod>(m)) m = cfg.hedac;
  if (std::holds_alternative<SmcMethod>(m)) m = cfg.smc;
  return m;
}

std::vector<Method> compare_methods(const AppConfig& cfg) {
  if (cfg.compare.methods.empty()) throw std::invalid_argument("no methods given");
  std::vector<Method> out;
  for (const auto& n : cfg.compare.methods) out.push_back(resolve_method(cfg, n));
  return out;
}

}  // namespace pmcov
