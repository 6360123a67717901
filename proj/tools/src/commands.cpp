#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "io_util.hpp"
#include "ziegler/analysis.hpp"
#include "ziegler/integrate.hpp"
#include "ziegler/lyapunov.hpp"
#include "ziegler/model.hpp"
#include "ziegler/observe.hpp"
#include "ziegler/periodic.hpp"

#ifndef ZIEGLER_CLI_VERSION
#define ZIEGLER_CLI_VERSION "unknown"
#endif

namespace ziegler_cli {

namespace fs = std::filesystem;
using namespace ziegler;

namespace {

std::string out_path(const CommandOptions& opt, const char* name) {
  return (fs::path(opt.out_dir) / name).string();
}

void ensure_out_dir(const CommandOptions& opt) {
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + opt.out_dir);
}

// Common sidecar skeleton. The block layout matches the input config, so a
// sidecar can be fed straight back through --config and reproduces the run.
json base_sidecar(const char* command, const Params& p,
                  const IntegratorConfig& icfg) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["version"] = ZIEGLER_CLI_VERSION;
  j["params"] = params_to_json(p);
  j["integrator"] = integrator_to_json(icfg);
  return j;
}

const char* status_name(IntegrationStatus s) {
  switch (s) {
    case IntegrationStatus::Ok: return "ok";
    case IntegrationStatus::MaxStepsReached: return "max_steps_reached";
    default: return "step_underflow";
  }
}

template <int N>
json events_to_json(const std::vector<Event<N>>& events) {
  json arr = json::array();
  for (const Event<N>& ev : events) {
    json e;
    e["kind"] = to_string(ev.kind);
    e["t"] = ev.t;
    json state = json::array();
    for (double x : ev.state) state.push_back(x);
    e["state"] = std::move(state);
    e["direction"] = ev.direction;
    e["transversal"] = ev.transversal;
    arr.push_back(std::move(e));
  }
  return arr;
}

template <int N>
std::string trajectory_csv(const Trajectory<N>& traj, const char* header) {
  std::string csv = header;
  csv += '\n';
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    csv += fmt17(traj.t[i]);
    for (double x : traj.y[i]) {
      csv += ',';
      csv += fmt17(x);
    }
    csv += '\n';
  }
  return csv;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, const CommandOptions& opt) {
  const json& sec = cfg.block("simulate");
  const std::string system = sec.value("system", std::string("full"));
  ensure_out_dir(opt);

  json sidecar = base_sidecar("simulate", cfg.params, cfg.integrator);
  std::string csv;
  json events;
  bool truncated = false;
  const char* status = "ok";
  json echo;
  echo["system"] = system;

  if (system == "full") {
    const FullState s0 = full_state_from_json(sec.at("initial_state"));
    echo["initial_state"] = to_json(s0);
    const Trajectory<4> traj =
        integrate<4>(FullField{cfg.params}, s0.to_array(), cfg.integrator);
    csv = trajectory_csv(traj, "t,phi1,phi2,v1,v2");
    events = events_to_json(traj.events);
    truncated = traj.truncated();
    status = status_name(traj.status);
  } else if (system == "reduced") {
    const ReducedState s0 = reduced_state_from_json(sec.at("initial_state"));
    echo["initial_state"] = to_json(s0);
    const Trajectory<3> traj =
        integrate<3>(ReducedField{cfg.params}, s0.to_array(), cfg.integrator);
    csv = trajectory_csv(traj, "t,phi1,v1,v2");
    events = events_to_json(traj.events);
    truncated = traj.truncated();
    status = status_name(traj.status);
  } else {
    throw ConfigError("simulate.system must be \"full\" or \"reduced\"");
  }

  sidecar["simulate"] = std::move(echo);
  sidecar["events"] = std::move(events);
  sidecar["truncated"] = truncated;
  sidecar["status"] = status;
  sidecar["outputs"] = {{"trajectory_csv", "trajectory.csv"}};

  write_file_atomic(out_path(opt, "trajectory.csv"), csv);
  write_file_atomic(out_path(opt, "trajectory.json"), sidecar.dump(2) + "\n");
  log_info("wrote trajectory.csv and trajectory.json to " + opt.out_dir);
  if (truncated)
    throw NumericalError(std::string("integration stopped early (") + status +
                         "); partial trajectory written");
  return 0;
}

int cmd_observe(const RunConfig& cfg, const CommandOptions& opt) {
  const json& sec = cfg.block("observe");
  if (!sec.contains("trajectory_csv"))
    throw ConfigError("observe.trajectory_csv is required");
  const std::string in_path = sec.at("trajectory_csv").get<std::string>();
  const std::string text = read_text_file(in_path);
  ensure_out_dir(opt);

  const char* full_header = "t,phi1,phi2,v1,v2";
  std::size_t pos = text.find('\n');
  if (pos == std::string::npos || text.substr(0, pos) != full_header)
    throw ConfigError(in_path + ": expected a trajectory CSV with header \"" +
                      full_header + "\"");

  std::string csv = "t,phi1,phi2,v1,v2,H,K\n";
  std::size_t rows = 0;
  pos += 1;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;

    double vals[5];
    const char* s = line.c_str();
    char* end = nullptr;
    for (int i = 0; i < 5; ++i) {
      vals[i] = std::strtod(s, &end);
      if (end == s || (i < 4 && *end != ',') || (i == 4 && *end != '\0'))
        throw ConfigError(in_path + ": malformed row \"" + line + "\"");
      s = end + 1;
    }
    const FullState st{vals[1], vals[2], vals[3], vals[4]};
    csv += line;
    csv += ',';
    csv += fmt17(energy(cfg.params, st));
    csv += ',';
    csv += fmt17(momentum_integral(cfg.params, st));
    csv += '\n';
    rows += 1;
  }

  json sidecar = base_sidecar("observe", cfg.params, cfg.integrator);
  sidecar["observe"] = {{"trajectory_csv", in_path}};
  sidecar["rows"] = rows;
  sidecar["truncated"] = false;
  sidecar["outputs"] = {{"observables_csv", "observables.csv"}};
  write_file_atomic(out_path(opt, "observables.csv"), csv);
  write_file_atomic(out_path(opt, "observables.json"), sidecar.dump(2) + "\n");
  log_info("wrote observables.csv (" + std::to_string(rows) + " rows)");
  return 0;
}

int cmd_periodic(const RunConfig& cfg, const CommandOptions& opt) {
  const json& sec = cfg.block("periodic");
  const ReducedState s0 = reduced_state_from_json(sec.at("initial_state"));
  DetectConfig dc;
  dc.integrator = cfg.integrator;
  dc.integrator.store_stride = 0;  // the search keeps events, not states
  if (sec.contains("return_tol")) dc.return_tol = sec.at("return_tol").get<double>();
  ensure_out_dir(opt);

  const DetectOutcome out = detect_periodic(cfg.params, s0, dc);

  json sidecar = base_sidecar("periodic", cfg.params, dc.integrator);
  sidecar["periodic"] = {{"initial_state", to_json(s0)},
                         {"return_tol", dc.return_tol}};
  sidecar["crossing_count"] = out.crossing_count;
  sidecar["return_defect"] = out.return_defect;
  if (out.periodic()) {
    sidecar["status"] = "periodic";
    const PeriodicOrbit& orbit = *out.orbit;
    sidecar["orbit"] = {
        {"anchor", to_json(orbit.anchor)},
        {"period", orbit.period},
        {"return_defect", orbit.return_defect},
        {"crossing_times", {orbit.crossing_times[0], orbit.crossing_times[1]}},
        {"crossing_states",
         {to_json(orbit.crossing_states[0]), to_json(orbit.crossing_states[1])}},
    };
  } else if (out.reason == NotPeriodicReason::NoSecondCrossingWithinHorizon) {
    // Absence of a recrossing inside the horizon is a scientific result.
    sidecar["status"] = "not_periodic_within_horizon";
  } else {
    sidecar["status"] = to_string(out.reason);
  }
  sidecar["truncated"] = !out.periodic() &&
                         out.reason == NotPeriodicReason::IntegrationFailure;

  write_file_atomic(out_path(opt, "orbit.json"), sidecar.dump(2) + "\n");
  log_info(std::string("orbit.json status: ") +
           sidecar["status"].get<std::string>());
  if (sidecar["truncated"].get<bool>())
    throw NumericalError("orbit search hit the integrator's limits; report written");
  return 0;
}

int cmd_mlce(const RunConfig& cfg, const CommandOptions& opt) {
  const json& sec = cfg.block("mlce");
  const FullState s0 = full_state_from_json(sec.at("initial_state"));
  const double t_total = sec.value("t_total", 1e4);
  const double renorm_interval = sec.value("renorm_interval", 1.0);
  std::uint64_t seed = sec.value("seed", std::uint64_t{12022});
  if (opt.seed) seed = *opt.seed;
  ensure_out_dir(opt);

  const LyapunovRecord rec =
      mlce(cfg.params, s0, cfg.integrator, t_total, renorm_interval, seed);

  std::string chi_csv = "t,chi\n";
  std::string renorm_csv = "t,log_norm_accum\n";
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    chi_csv += fmt17(rec.times[i]);
    chi_csv += ',';
    chi_csv += fmt17(rec.chi[i]);
    chi_csv += '\n';
    renorm_csv += fmt17(rec.times[i]);
    renorm_csv += ',';
    renorm_csv += fmt17(rec.log_norm_accum[i]);
    renorm_csv += '\n';
  }

  json sidecar = base_sidecar("mlce", cfg.params, cfg.integrator);
  sidecar["mlce"] = {{"initial_state", to_json(s0)},
                     {"t_total", t_total},
                     {"renorm_interval", renorm_interval},
                     {"seed", seed}};
  sidecar["results"] = {{"final_chi", rec.final_chi()},
                        {"last_decade_min", rec.last_decade_min()},
                        {"det_min", rec.det_min},
                        {"det_max", rec.det_max},
                        {"renorm_count", rec.times.size()}};
  sidecar["truncated"] = false;
  sidecar["outputs"] = {{"chi_csv", "mlce.csv"},
                        {"renorm_csv", "mlce_renorm.csv"}};

  write_file_atomic(out_path(opt, "mlce.csv"), chi_csv);
  write_file_atomic(out_path(opt, "mlce_renorm.csv"), renorm_csv);
  write_file_atomic(out_path(opt, "mlce.json"), sidecar.dump(2) + "\n");
  log_info("final exponent estimate " + fmt17(rec.final_chi()));
  return 0;
}

namespace {

SectionPlane plane_from_string(const std::string& name) {
  if (name == "v1_zero") return SectionPlane::V1ZeroInReducedProjection;
  if (name == "phi2_pi") return SectionPlane::Phi2EqualsPi;
  throw ConfigError("section.plane must be \"v1_zero\" or \"phi2_pi\"");
}

std::string section_csv(const SectionPointSet& ss) {
  std::string csv = "x,y,direction,t\n";
  for (const SectionPoint& pt : ss.points) {
    csv += fmt17(pt.x);
    csv += ',';
    csv += fmt17(pt.y);
    csv += ',';
    csv += std::to_string(pt.direction);
    csv += ',';
    csv += fmt17(pt.t);
    csv += '\n';
  }
  return csv;
}

}  // namespace

int cmd_section(const RunConfig& cfg, const CommandOptions& opt) {
  const json& sec = cfg.block("section");
  const FullState s0 = full_state_from_json(sec.at("initial_state"));
  const std::string plane_name = sec.value("plane", std::string("v1_zero"));
  const int min_crossings = sec.value("min_crossings", 500);
  ensure_out_dir(opt);

  const SectionPointSet ss = section(cfg.params, s0, cfg.integrator,
                                     plane_from_string(plane_name), min_crossings);

  json sidecar = base_sidecar("section", cfg.params, cfg.integrator);
  sidecar["section"] = {{"initial_state", to_json(s0)},
                        {"plane", plane_name},
                        {"min_crossings", min_crossings}};
  sidecar["count"] = ss.points.size();
  sidecar["truncated"] = ss.truncated;
  sidecar["outputs"] = {{"section_csv", "section.csv"}};

  write_file_atomic(out_path(opt, "section.csv"), section_csv(ss));
  write_file_atomic(out_path(opt, "section.json"), sidecar.dump(2) + "\n");
  if (ss.truncated)
    log_warn("horizon ended after " + std::to_string(ss.points.size()) + " of " +
             std::to_string(min_crossings) + " crossings");
  return 0;
}

namespace {

int sweep_force(const RunConfig& cfg, const CommandOptions& opt, const json& sec) {
  const ReducedState s0 = reduced_state_from_json(sec.at("initial_state"));
  if (!sec.contains("values") || !sec.at("values").is_array())
    throw ConfigError("sweep.values must be an array of force magnitudes");
  std::vector<double> values;
  for (const json& v : sec.at("values")) {
    if (!v.is_number()) throw ConfigError("sweep.values must contain only numbers");
    values.push_back(v.get<double>());
  }
  const double bracket_width = sec.value("bracket_width", 0.05);

  DetectConfig dc;
  dc.integrator = cfg.integrator;
  dc.integrator.store_stride = 0;
  if (sec.contains("return_tol")) dc.return_tol = sec.at("return_tol").get<double>();

  const SweepResult r = force_sweep(cfg.params, s0, values, dc, bracket_width);

  std::string csv = "F,from_refinement,crossing_count,periodic,period,reason\n";
  for (const SweepOutcome& o : r.outcomes) {
    csv += fmt17(o.value);
    csv += o.from_refinement ? ",1," : ",0,";
    csv += std::to_string(o.crossing_count);
    csv += o.periodic ? ",1," : ",0,";
    csv += fmt17(o.period);
    csv += ',';
    csv += o.periodic ? "periodic" : to_string(o.reason);
    csv += '\n';
  }

  json sidecar = base_sidecar("sweep", cfg.params, dc.integrator);
  sidecar["sweep"] = {{"kind", "force"},
                      {"initial_state", to_json(s0)},
                      {"values", values},
                      {"bracket_width", bracket_width},
                      {"return_tol", dc.return_tol}};
  sidecar["bracket_found"] = r.bracket_found;
  if (r.bracket_found) {
    sidecar["bracket_lo"] = r.bracket_lo;
    sidecar["bracket_hi"] = r.bracket_hi;
  }
  sidecar["transition_count"] = r.transition_count;
  sidecar["truncated"] = false;
  sidecar["outputs"] = {{"sweep_csv", "sweep.csv"}};

  write_file_atomic(out_path(opt, "sweep.csv"), csv);
  write_file_atomic(out_path(opt, "sweep.json"), sidecar.dump(2) + "\n");
  if (r.bracket_found)
    log_info("critical force bracketed in [" + fmt17(r.bracket_lo) + ", " +
             fmt17(r.bracket_hi) + "]");
  else
    log_info("no crossing-loss transition along the scan");
  return 0;
}

int sweep_initial_condition(const RunConfig& cfg, const CommandOptions& opt,
                            const json& sec) {
  IcSweepSpec spec;
  if (sec.contains("base")) spec.base = full_state_from_json(sec.at("base"));
  spec.v2_step = sec.value("v2_step", spec.v2_step);
  spec.n_min = sec.value("n_min", spec.n_min);
  spec.n_max = sec.value("n_max", spec.n_max);
  spec.integrator = cfg.integrator;

  ClassifierConfig& cc = spec.classifier;
  const json cls = sec.value("classifier", json::object());
  cc.chi_threshold = cls.value("chi_threshold", cc.chi_threshold);
  cc.curve_dev_frac = cls.value("curve_dev_frac", cc.curve_dev_frac);
  cc.hull_ratio = cls.value("hull_ratio", cc.hull_ratio);
  cc.min_crossings = cls.value("min_crossings", cc.min_crossings);
  cc.t_total = cls.value("t_total", cc.t_total);
  cc.renorm_interval = cls.value("renorm_interval", cc.renorm_interval);
  cc.tangent_seed = cls.value("tangent_seed", cc.tangent_seed);
  if (opt.seed) cc.tangent_seed = *opt.seed;

  const SweepResult r = ic_sweep(cfg.params, spec, opt.jobs);

  // Per-entry artifacts first, then the aggregate, all in index order.
  std::string csv =
      "n,chi,curve_deviation,hull_area,crossing_count,verdict,failed,section_csv\n";
  json rows = json::array();
  bool any_failed = false;
  for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
    const SweepOutcome& o = r.outcomes[i];
    const int n = spec.n_min + static_cast<int>(i);
    const std::string section_name = "section_n" + std::to_string(n) + ".csv";
    write_file_atomic(out_path(opt, section_name.c_str()), section_csv(o.section));

    csv += std::to_string(n);
    csv += ',';
    csv += fmt17(o.chi);
    csv += ',';
    csv += fmt17(o.curve_deviation);
    csv += ',';
    csv += fmt17(o.hull_area);
    csv += ',';
    csv += std::to_string(o.crossing_count);
    csv += ',';
    csv += to_string(o.verdict);
    csv += o.failed ? ",1," : ",0,";
    csv += section_name;
    csv += '\n';

    json row = {{"n", n},
                {"chi", o.chi},
                {"curve_deviation", o.curve_deviation},
                {"hull_area", o.hull_area},
                {"crossing_count", o.crossing_count},
                {"verdict", to_string(o.verdict)},
                {"failed", o.failed},
                {"section_csv", section_name}};
    if (o.failed) {
      row["error"] = o.error;
      any_failed = true;
    }
    rows.push_back(std::move(row));
  }

  json sidecar = base_sidecar("sweep", cfg.params, cfg.integrator);
  sidecar["sweep"] = {{"kind", "initial_condition"},
                      {"base", to_json(spec.base)},
                      {"v2_step", spec.v2_step},
                      {"n_min", spec.n_min},
                      {"n_max", spec.n_max},
                      {"classifier",
                       {{"chi_threshold", cc.chi_threshold},
                        {"curve_dev_frac", cc.curve_dev_frac},
                        {"hull_ratio", cc.hull_ratio},
                        {"min_crossings", cc.min_crossings},
                        {"t_total", cc.t_total},
                        {"renorm_interval", cc.renorm_interval},
                        {"tangent_seed", cc.tangent_seed}}}};
  sidecar["entries"] = std::move(rows);
  sidecar["truncated"] = any_failed;
  sidecar["outputs"] = {{"sweep_csv", "sweep.csv"}};

  write_file_atomic(out_path(opt, "sweep.csv"), csv);
  write_file_atomic(out_path(opt, "sweep.json"), sidecar.dump(2) + "\n");
  log_info("swept " + std::to_string(r.outcomes.size()) + " initial conditions");
  if (any_failed)
    throw NumericalError("one or more sweep entries failed; partial results written");
  return 0;
}

}  // namespace

int cmd_sweep(const RunConfig& cfg, const CommandOptions& opt) {
  const json& sec = cfg.block("sweep");
  const std::string kind = sec.value("kind", std::string());
  ensure_out_dir(opt);
  if (kind == "force") return sweep_force(cfg, opt, sec);
  if (kind == "initial_condition") return sweep_initial_condition(cfg, opt, sec);
  throw ConfigError("sweep.kind must be \"force\" or \"initial_condition\"");
}

}  // namespace ziegler_cli
