#include "run_config.hpp"

#include <string>

#include "io_util.hpp"

namespace ziegler_cli {

using ziegler::FollowerLever;
using ziegler::FullState;
using ziegler::IntegratorConfig;
using ziegler::Params;
using ziegler::ReducedState;

namespace {

double num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
  return v.get<double>();
}

}  // namespace

const json& RunConfig::block(const std::string& name) const {
  if (!root.contains(name))
    throw ConfigError("config is missing the \"" + name + "\" block");
  const json& b = root.at(name);
  if (!b.is_object())
    throw ConfigError("config block \"" + name + "\" must be an object");
  return b;
}

RunConfig load_run_config(const std::string& path) {
  json root;
  try {
    root = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(path + ": config must be a JSON object");
  if (!root.contains("schema"))
    throw ConfigError(path + ": config must carry a \"schema\" field");
  if (root.at("schema") != 1)
    throw ConfigError(path + ": unsupported schema version");

  RunConfig cfg;
  cfg.root = std::move(root);
  cfg.params = params_from_json(cfg.root.value("params", json::object()));
  cfg.integrator =
      integrator_from_json(cfg.root.value("integrator", json::object()));
  return cfg;
}

json params_to_json(const Params& p) {
  return json{
      {"m1", p.m1}, {"m2", p.m2}, {"m3", p.m3},
      {"l1", p.l1}, {"l2", p.l2}, {"l3", p.l3},
      {"k1", p.k1}, {"k2", p.k2}, {"F", p.F},
      {"follower_lever", ziegler::to_string(p.follower_lever)},
  };
}

Params params_from_json(const json& j) {
  Params p;
  p.m1 = num(j, "m1", p.m1);
  p.m2 = num(j, "m2", p.m2);
  p.m3 = num(j, "m3", p.m3);
  p.l1 = num(j, "l1", p.l1);
  p.l2 = num(j, "l2", p.l2);
  p.l3 = num(j, "l3", p.l3);
  p.k1 = num(j, "k1", p.k1);
  p.k2 = num(j, "k2", p.k2);
  p.F = num(j, "F", p.F);
  if (j.contains("follower_lever")) {
    const std::string lever = j.at("follower_lever").get<std::string>();
    if (lever == "L1")
      p.follower_lever = FollowerLever::L1;
    else if (lever == "L2")
      p.follower_lever = FollowerLever::L2;
    else
      throw ConfigError("follower_lever must be \"L1\" or \"L2\"");
  }
  p.validate();
  return p;
}

json integrator_to_json(const IntegratorConfig& c) {
  return json{
      {"rel_tol", c.rel_tol},
      {"abs_tol", c.abs_tol},
      {"h_init", c.h_init},
      {"h_min", c.h_min},
      {"h_max", c.h_max},
      {"t_max", c.t_max},
      {"max_steps", c.max_steps},
      {"crossing_tol", c.crossing_tol},
      {"transversality_threshold", c.transversality_threshold},
      {"store_stride", c.store_stride},
  };
}

IntegratorConfig integrator_from_json(const json& j) {
  IntegratorConfig c;
  c.rel_tol = num(j, "rel_tol", c.rel_tol);
  c.abs_tol = num(j, "abs_tol", c.abs_tol);
  c.h_init = num(j, "h_init", c.h_init);
  c.h_min = num(j, "h_min", c.h_min);
  c.h_max = num(j, "h_max", c.h_max);
  c.t_max = num(j, "t_max", c.t_max);
  if (j.contains("max_steps")) c.max_steps = j.at("max_steps").get<long long>();
  c.crossing_tol = num(j, "crossing_tol", c.crossing_tol);
  c.transversality_threshold =
      num(j, "transversality_threshold", c.transversality_threshold);
  if (j.contains("store_stride"))
    c.store_stride = j.at("store_stride").get<int>();
  c.validate();
  return c;
}

namespace {

void require_numeric_array(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw ConfigError(std::string(what) + " must be an array of " +
                      std::to_string(n) + " numbers");
  for (const json& v : j)
    if (!v.is_number())
      throw ConfigError(std::string(what) + " must contain only numbers");
}

}  // namespace

FullState full_state_from_json(const json& j) {
  require_numeric_array(j, 4, "initial_state");
  return FullState{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                   j[3].get<double>()};
}

ReducedState reduced_state_from_json(const json& j) {
  require_numeric_array(j, 3, "initial_state");
  return ReducedState{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json to_json(const FullState& s) { return json{s.phi1, s.phi2, s.v1, s.v2}; }

json to_json(const ReducedState& s) { return json{s.phi1, s.v1, s.v2}; }

}  // namespace ziegler_cli
