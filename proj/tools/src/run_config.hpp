#pragma once

#include <array>
#include <string>

#include <json.hpp>

#include "ziegler/integrate.hpp"
#include "ziegler/params.hpp"
#include "ziegler/states.hpp"

namespace ziegler_cli {

using nlohmann::json;

// A parsed run configuration: physical parameters and integrator settings are
// decoded eagerly, command blocks stay as JSON and are picked apart by the
// command that owns them. Unknown top-level keys are ignored, which lets a
// sidecar produced by an earlier run be fed back in unchanged.
struct RunConfig {
  json root;
  ziegler::Params params;
  ziegler::IntegratorConfig integrator;

  const json& block(const std::string& name) const;
};

RunConfig load_run_config(const std::string& path);

json params_to_json(const ziegler::Params& p);
ziegler::Params params_from_json(const json& j);

json integrator_to_json(const ziegler::IntegratorConfig& c);
ziegler::IntegratorConfig integrator_from_json(const json& j);

ziegler::FullState full_state_from_json(const json& j);
ziegler::ReducedState reduced_state_from_json(const json& j);
json to_json(const ziegler::FullState& s);
json to_json(const ziegler::ReducedState& s);

}  // namespace ziegler_cli
