#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "run_config.hpp"

namespace ziegler_cli {

struct CommandOptions {
  std::string out_dir = ".";
  int jobs = 1;
  std::optional<std::uint64_t> seed;  // overrides any seed in the config
};

int cmd_simulate(const RunConfig& cfg, const CommandOptions& opt);
int cmd_observe(const RunConfig& cfg, const CommandOptions& opt);
int cmd_periodic(const RunConfig& cfg, const CommandOptions& opt);
int cmd_mlce(const RunConfig& cfg, const CommandOptions& opt);
int cmd_section(const RunConfig& cfg, const CommandOptions& opt);
int cmd_sweep(const RunConfig& cfg, const CommandOptions& opt);

}  // namespace ziegler_cli
