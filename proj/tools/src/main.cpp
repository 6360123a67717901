#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "io_util.hpp"
#include "run_config.hpp"

#ifndef ZIEGLER_CLI_VERSION
#define ZIEGLER_CLI_VERSION "unknown"
#endif

namespace {

void print_error_json(const char* kind, const std::string& message) {
  const nlohmann::json err = {{"error", kind}, {"message", message}};
  std::fprintf(stderr, "%s\n", err.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar double pendulum with a follower force: simulation, "
               "conserved quantities, periodic orbits, Lyapunov exponents, "
               "sections, and parameter sweeps."};
  app.set_version_flag("--version", ZIEGLER_CLI_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  ziegler_cli::CommandOptions opt;

  const std::pair<const char*, const char*> subs[] = {
      {"simulate", "integrate one trajectory and export it as CSV"},
      {"observe", "append energy and momentum columns to a trajectory CSV"},
      {"periodic", "search for a mirror-symmetric periodic orbit"},
      {"mlce", "estimate the maximum Lyapunov exponent"},
      {"section", "collect plane crossings of a trajectory"},
      {"sweep", "scan a force range or a family of initial conditions"},
  };
  for (const auto& [name, desc] : subs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON run configuration")
        ->required();
    sub->add_option("--out", opt.out_dir, "output directory (default: .)");
    sub->add_option("--jobs", opt.jobs, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "override the tangent seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    print_error_json("config", e.what());
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const ziegler_cli::RunConfig cfg = ziegler_cli::load_run_config(config_path);
    if (name == "simulate") return ziegler_cli::cmd_simulate(cfg, opt);
    if (name == "observe") return ziegler_cli::cmd_observe(cfg, opt);
    if (name == "periodic") return ziegler_cli::cmd_periodic(cfg, opt);
    if (name == "mlce") return ziegler_cli::cmd_mlce(cfg, opt);
    if (name == "section") return ziegler_cli::cmd_section(cfg, opt);
    return ziegler_cli::cmd_sweep(cfg, opt);
  } catch (const ziegler_cli::ConfigError& e) {
    print_error_json("config", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    print_error_json("config", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    print_error_json("config", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error_json("numerical", e.what());
    return 3;
  }
}
