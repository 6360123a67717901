#include "ziegler/periodic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>

#include "ziegler/model.hpp"

namespace ziegler {

UVCoefficients uv_coefficients(const Params& p, double phi1) {
  const double c = std::cos(phi1);
  UVCoefficients out;
  out.v = p.m1 * p.l1 * p.l1 + p.m3 * p.l3 * p.l3 + p.m1 * p.l1 * p.l2 * c -
          p.m3 * p.l2 * p.l3 * c;
  out.u = p.m1 * p.l1 * p.l1 + p.m1 * p.l2 * p.l2 + p.m2 * p.l2 * p.l2 +
          p.m3 * p.l2 * p.l2 + 2.0 * p.m1 * p.l1 * p.l2 * c -
          2.0 * p.m3 * p.l2 * p.l3 * c;
  return out;
}

double energy_at_fixed_momentum(const Params& p, double K, double phi1,
                                double v1) {
  const UVCoefficients uv = uv_coefficients(p, phi1);
  const double c = std::cos(phi1);
  const double mu = p.m1 * p.l1 * p.l2 - p.m3 * p.l2 * p.l3;
  const double cap_p = p.l2 * p.l2 * (p.m1 + p.m2 + p.m3);
  const double a11 = p.m1 * p.l1 * p.l1 + p.m3 * p.l3 * p.l3;
  const double x2 = (K - uv.v * v1) / uv.u;             // eliminated v2
  const double x1 = (K + (uv.u - uv.v) * v1) / uv.u;    // v1 + v2
  return 0.5 * cap_p * x2 * x2 + 0.5 * a11 * x1 * x1 + x2 * x1 * c * mu +
         0.5 * p.k1 * phi1 * phi1;
}

double critical_v1(const Params& p, double K) {
  const UVCoefficients uv = uv_coefficients(p, 0.0);
  const double mu = p.m1 * p.l1 * p.l2 - p.m3 * p.l2 * p.l3;
  const double cap_p = p.l2 * p.l2 * (p.m1 + p.m2 + p.m3);
  const double a11 = p.m1 * p.l1 * p.l1 + p.m3 * p.l3 * p.l3;
  const double num = uv.v * K * cap_p + K * (uv.v - uv.u) * a11 +
                     (2.0 * uv.v - uv.u) * K * mu;
  const double den = uv.v * uv.v * cap_p + (uv.u - uv.v) * (uv.u - uv.v) * a11 -
                     2.0 * uv.v * (uv.u - uv.v) * mu;
  return num / den;
}

const char* to_string(NotPeriodicReason r) {
  switch (r) {
    case NotPeriodicReason::NoSecondCrossingWithinHorizon:
      return "no_second_crossing_within_horizon";
    case NotPeriodicReason::DefectTooLarge: return "defect_too_large";
    case NotPeriodicReason::NonTransversalCrossing: return "non_transversal_crossing";
    default: return "integration_failure";
  }
}

namespace {

EventSpec<3> plane_spec() {
  EventSpec<3> es;
  es.kind = EventKind::Phi1Zero;
  es.coord = 0;
  es.target = 0.0;
  return es;
}

}  // namespace

DetectOutcome detect_periodic(const Params& p, const ReducedState& s0,
                              const DetectConfig& cfg) {
  const ReducedField field(p);
  DetectOutcome out;

  // A start on the plane is itself the first crossing when transversal.
  struct Crossing {
    double t;
    std::array<double, 3> y;
    bool transversal;
  };
  std::vector<Crossing> crossings;
  const bool anchored = std::fabs(s0.phi1) <= cfg.integrator.crossing_tol;
  if (anchored) {
    crossings.push_back({0.0, s0.to_array(),
                         std::fabs(s0.v1) >= cfg.integrator.transversality_threshold});
  }
  const std::size_t needed = 2;

  IntegratorConfig icfg = cfg.integrator;
  icfg.store_stride = 0;
  auto on_event = [&](const Event<3>& ev) {
    if (anchored && ev.t <= 1e-7) return false;  // duplicate of the anchor
    crossings.push_back({ev.t, ev.state, ev.transversal});
    return crossings.size() >= needed;
  };

  Trajectory<3> traj = integrate<3>(field, s0.to_array(), icfg, {plane_spec()}, on_event);
  out.crossing_count = static_cast<int>(crossings.size());
  if (traj.status == IntegrationStatus::StepUnderflow) {
    out.reason = NotPeriodicReason::IntegrationFailure;
    return out;
  }
  if (crossings.size() < needed) {
    out.reason = NotPeriodicReason::NoSecondCrossingWithinHorizon;
    return out;
  }
  const Crossing& first = crossings[0];
  const Crossing& second = crossings[1];
  if (!first.transversal || !second.transversal) {
    out.reason = NotPeriodicReason::NonTransversalCrossing;
    return out;
  }

  const double period = 2.0 * (second.t - first.t);
  IntegratorConfig vcfg = cfg.integrator;
  vcfg.t_max = period;
  vcfg.store_stride = 0;
  Trajectory<3> loop = integrate<3>(field, first.y, vcfg);
  if (loop.truncated()) {
    out.reason = NotPeriodicReason::IntegrationFailure;
    return out;
  }
  double defect = 0.0;
  for (int i = 0; i < 3; ++i)
    defect = std::max(defect, std::fabs(loop.back()[i] - first.y[i]));
  out.return_defect = defect;
  if (defect > cfg.return_tol) {
    out.reason = NotPeriodicReason::DefectTooLarge;
    return out;
  }

  PeriodicOrbit orbit;
  orbit.anchor = ReducedState::from_array(first.y);
  orbit.period = period;
  orbit.return_defect = defect;
  orbit.crossing_states[0] = ReducedState::from_array(first.y);
  orbit.crossing_states[1] = ReducedState::from_array(second.y);
  orbit.crossing_times[0] = first.t;
  orbit.crossing_times[1] = second.t;
  out.orbit = orbit;
  return out;
}

int crossings_over_period(const Params& p, const PeriodicOrbit& orbit,
                          const DetectConfig& cfg) {
  const ReducedField field(p);
  IntegratorConfig icfg = cfg.integrator;
  icfg.t_max = orbit.period * 1.01;
  icfg.store_stride = 0;
  Trajectory<3> traj =
      integrate<3>(field, orbit.anchor.to_array(), icfg, {plane_spec()});
  const double lo = orbit.period * 1e-6;
  int count = 0;
  for (const auto& ev : traj.events) {
    if (ev.t > lo && ev.transversal) ++count;
  }
  return count;
}

double FamilyGrid::v1_at(int i) const {
  if (spec.n1 == 1) return spec.v1_min;
  return spec.v1_min + (spec.v1_max - spec.v1_min) * i / double(spec.n1 - 1);
}

double FamilyGrid::v2_at(int j) const {
  if (spec.n2 == 1) return spec.v2_min;
  return spec.v2_min + (spec.v2_max - spec.v2_min) * j / double(spec.n2 - 1);
}

int FamilyGrid::periodic_count() const {
  int n = 0;
  for (const auto& c : cells) n += c.periodic() ? 1 : 0;
  return n;
}

FamilyGrid map_family(const Params& p, const FamilyGridSpec& spec, int jobs) {
  if (spec.n1 < 1 || spec.n2 < 1)
    throw std::domain_error("map_family: grid must have at least one cell");
  FamilyGrid grid;
  grid.spec = spec;
  grid.cells.resize(static_cast<std::size_t>(spec.n1) * spec.n2);

  auto run_cell = [&](int idx) {
    const int i = idx / spec.n2;
    const int j = idx % spec.n2;
    ReducedState s0;
    s0.phi1 = 0.0;
    s0.v1 = grid.v1_at(i);
    s0.v2 = grid.v2_at(j);
    grid.cells[idx] = detect_periodic(p, s0, spec.detect);
  };

  const int total = spec.n1 * spec.n2;
  if (jobs <= 1) {
    for (int idx = 0; idx < total; ++idx) run_cell(idx);
    return grid;
  }
  std::vector<std::future<void>> workers;
  std::atomic<int> next{0};
  for (int w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&]() {
      for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1))
        run_cell(idx);
    }));
  }
  for (auto& f : workers) f.get();
  return grid;
}

int largest_periodic_component(const FamilyGrid& grid) {
  const int n1 = grid.spec.n1, n2 = grid.spec.n2;
  std::vector<int> label(static_cast<std::size_t>(n1) * n2, -1);
  int best = 0;
  std::vector<int> stack;
  for (int start = 0; start < n1 * n2; ++start) {
    if (label[start] != -1 || !grid.cells[start].periodic()) continue;
    int size = 0;
    stack.push_back(start);
    label[start] = start;
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      ++size;
      const int i = idx / n2, j = idx % n2;
      const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ni = i + di[d], nj = j + dj[d];
        if (ni < 0 || ni >= n1 || nj < 0 || nj >= n2) continue;
        const int nidx = ni * n2 + nj;
        if (label[nidx] == -1 && grid.cells[nidx].periodic()) {
          label[nidx] = start;
          stack.push_back(nidx);
        }
      }
    }
    best = std::max(best, size);
  }
  return best;
}

double worst_row_period_jump(const FamilyGrid& grid) {
  double worst = 0.0;
  for (int i = 0; i < grid.spec.n1; ++i) {
    std::vector<double> jumps;
    for (int j = 0; j + 1 < grid.spec.n2; ++j) {
      const auto& a = grid.at(i, j);
      const auto& b = grid.at(i, j + 1);
      if (a.periodic() && b.periodic())
        jumps.push_back(std::fabs(b.orbit->period - a.orbit->period));
    }
    if (jumps.size() < 3) continue;
    std::vector<double> sorted = jumps;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double largest = sorted.back();
    // A flat row (median ~ 0) with equally flat jumps is continuous; guard
    // the ratio with a small absolute floor.
    const double floor_abs = 1e-12;
    worst = std::max(worst, largest / std::max(median, floor_abs));
  }
  return worst;
}

}  // namespace ziegler
