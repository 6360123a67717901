// Whole-system acceptance checks. Each criterion exercises the library the
// way a study would and prints one [PASS]/[FAIL] line with the quantities it
// actually measured; thresholds live here, next to the check they gate.
// Arguments select criteria by number, no arguments runs all ten. The exit
// status is the number of failures.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "ziegler/analysis.hpp"
#include "ziegler/integrate.hpp"
#include "ziegler/lyapunov.hpp"
#include "ziegler/model.hpp"
#include "ziegler/observe.hpp"
#include "ziegler/params.hpp"
#include "ziegler/periodic.hpp"
#include "ziegler/rng.hpp"
#include "ziegler/states.hpp"

namespace {

using namespace ziegler;

constexpr double kPi = 3.14159265358979323846;

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return std::string(buf);
}

// 1. With the force off and the pivot spring removed, both the energy and
//    the momentum conjugate to the pivot angle are first integrals. Over
//    t = 1000 at the default tolerances neither may drift past 1e-7
//    relative, and the run must stay under five seconds.
bool criterion_1(std::string& detail) {
  Stopwatch watch;
  Params p = reference_params();
  p.F = 0.0;
  p.k2 = 0.0;
  const FullState s0{2.0, 0.5, 0.4, -0.3};

  IntegratorConfig cfg;
  cfg.t_max = 1000.0;
  cfg.store_stride = 20;
  FullField field(p);
  const Trajectory<4> traj = integrate<4>(field, s0.to_array(), cfg);

  const double H0 = energy(p, s0);
  const double K0 = momentum_integral(p, s0);
  double dH = 0.0, dK = 0.0;
  for (const auto& y : traj.y) {
    const FullState s = FullState::from_array(y);
    dH = std::max(dH, std::fabs(energy(p, s) - H0) / std::fabs(H0));
    dK = std::max(dK, std::fabs(momentum_integral(p, s) - K0) / std::fabs(K0));
  }

  const double wall = watch.seconds();
  detail = format(
      "energy drift %.2e, momentum drift %.2e over t=1000 (%.2f s)", dH, dK,
      wall);
  return traj.ok() && dH < 1e-7 && dK < 1e-7 && wall < 5.0;
}

// 2. The reduced flow composed with phi1 -> -phi1 and time reversal is the
//    flow again. The certificate compares a mirrored backward run against
//    the forward run from the reflected start; the mismatch must stay below
//    1e-6 over t = 100 for twenty random starts in each of three regimes:
//    force off, balanced arms with the force on, and the odd perturbation
//    that keeps only the symmetry.
bool criterion_2(std::string& detail) {
  Stopwatch watch;
  IntegratorConfig cfg;
  cfg.t_max = 100.0;

  Params forceless = reference_params();
  forceless.F = 0.0;
  forceless.k2 = 0.0;

  Params balanced = reference_params();
  balanced.m3 = 1.0;
  balanced.k2 = 0.0;

  SplitMix64 rng(20260816ULL);
  double worst = 0.0;
  double shortest = cfg.t_max;
  for (int regime = 0; regime < 3; ++regime) {
    for (int i = 0; i < 20; ++i) {
      const std::array<double, 3> s0 = {rng.uniform(-1.0, 1.0),
                                        rng.uniform(-1.0, 1.0),
                                        rng.uniform(-1.0, 1.0)};
      ReflectionCheck<3> rc;
      if (regime == 0) {
        rc = flow_with_reflection_check(ReducedField(forceless), s0, cfg);
      } else if (regime == 1) {
        rc = flow_with_reflection_check(ReducedField(balanced), s0, cfg);
      } else {
        rc = flow_with_reflection_check(PerturbedField(forceless, 0.01), s0, cfg);
      }
      worst = std::max(worst, rc.max_defect);
      shortest = std::min(shortest, rc.t_compared);
    }
  }

  const double wall = watch.seconds();
  detail = format(
      "worst reflection defect %.2e over 60 runs, horizon >= %.1f (%.2f s)",
      worst, shortest, wall);
  return worst < 1e-6 && shortest > 99.0 && wall < 30.0;
}

// The three families the orbit criteria draw from: a stiff inner spring
// without force, balanced arms carrying the force, and the springless limit
// pulled inward. Anchor velocity windows were chosen well inside each
// family; v1 stays away from zero, where anchors degenerate to spinning
// equilibria that never recross.
struct OrbitRegime {
  const char* name;
  Params p;
  double v1_lo, v1_hi, v2_lo, v2_hi;
  int n;
};

std::array<OrbitRegime, 3> orbit_regimes() {
  Params stiff = reference_params();
  stiff.F = 0.0;
  stiff.k2 = 0.0;
  stiff.k1 = 10.0;

  Params balanced = reference_params();
  balanced.m3 = 1.0;
  balanced.k2 = 0.0;

  Params springless = reference_params();
  springless.m3 = 1.0;
  springless.k1 = 0.0;
  springless.k2 = 0.0;
  springless.F = -1.0;

  return {OrbitRegime{"stiff spring", stiff, 0.0326, 0.2326, 0.1099, 0.3099, 7},
          OrbitRegime{"balanced", balanced, 0.1, 0.5, -0.3, 0.3, 6},
          OrbitRegime{"springless", springless, 0.1, 0.5, -0.3, 0.3, 6}};
}

// 3. Every orbit the detector reports periodic must close to better than
//    1e-6 and cut the phi1 = 0 plane exactly twice per period, and the three
//    families together must supply at least 100 such orbits inside two
//    minutes.
bool criterion_3(std::string& detail) {
  Stopwatch watch;
  DetectConfig dc;
  int candidates = 0, detected = 0, defect_bad = 0, crossings_bad = 0;
  for (const OrbitRegime& rg : orbit_regimes()) {
    for (int i = 0; i < rg.n; ++i) {
      for (int j = 0; j < rg.n; ++j) {
        ReducedState s0;
        s0.phi1 = 0.0;
        s0.v1 = rg.v1_lo + (rg.v1_hi - rg.v1_lo) * i / (rg.n - 1);
        s0.v2 = rg.v2_lo + (rg.v2_hi - rg.v2_lo) * j / (rg.n - 1);
        ++candidates;
        const DetectOutcome out = detect_periodic(rg.p, s0, dc);
        if (!out.periodic()) continue;
        ++detected;
        if (!(out.orbit->return_defect < 1e-6)) ++defect_bad;
        if (crossings_over_period(rg.p, *out.orbit, dc) != 2) ++crossings_bad;
      }
    }
  }

  const double wall = watch.seconds();
  detail = format(
      "%d of %d anchors periodic, %d defect violations, %d crossing-count "
      "violations (%.1f s)",
      detected, candidates, defect_bad, crossings_bad, wall);
  return detected >= 100 && defect_bad == 0 && crossings_bad == 0 &&
         wall < 120.0;
}

// 4. On a 21x21 anchor grid each family forms a connected periodic region of
//    more than 50 cells, and along every row the period varies gradually: no
//    neighbor jump may exceed ten times the row's median jump.
bool criterion_4(std::string& detail) {
  Stopwatch watch;
  bool ok = true;
  std::string parts;
  for (const OrbitRegime& rg : orbit_regimes()) {
    FamilyGridSpec spec;
    spec.v1_min = rg.v1_lo;
    spec.v1_max = rg.v1_hi;
    spec.n1 = 21;
    spec.v2_min = rg.v2_lo;
    spec.v2_max = rg.v2_hi;
    spec.n2 = 21;
    const FamilyGrid grid = map_family(rg.p, spec, 1);
    const int component = largest_periodic_component(grid);
    const double jump = worst_row_period_jump(grid);
    ok = ok && component > 50 && jump <= 10.0;
    parts += format("%s%s component %d, row jump %.2f",
                    parts.empty() ? "" : "; ", rg.name, component, jump);
  }
  detail = parts + format(" (%.1f s)", watch.seconds());
  return ok;
}

// 5. Scanning the force upward from zero with a fixed start, the second
//    plane crossing survives at first and is gone by the end of the scan;
//    bisection has to pin the loss inside a bracket narrower than 0.05.
bool criterion_5(std::string& detail) {
  Stopwatch watch;
  Params p = reference_params();
  p.k2 = 0.0;
  const ReducedState s0{0.0, 0.3, 0.3};
  std::vector<double> forces;
  for (int i = 0; i <= 16; ++i) forces.push_back(0.25 * i);
  DetectConfig dc;
  dc.integrator.t_max = 100.0;

  const SweepResult res = force_sweep(p, s0, forces, dc, 0.05);
  const double width = res.bracket_hi - res.bracket_lo;
  detail = format(
      "critical force in [%.5f, %.5f], width %.5f, %d transition(s) (%.2f s)",
      res.bracket_lo, res.bracket_hi, width, res.transition_count,
      watch.seconds());
  return res.bracket_found && width < 0.05;
}

// 6. At the reference parameters the gently pushed inverted start stays
//    regular: the exponent estimate after t = 1e4 remains under 0.01 and the
//    v1 = 0 slice of the trajectory lies on a one-dimensional curve, all
//    within a minute.
bool criterion_6(std::string& detail) {
  Stopwatch watch;
  const Params p = reference_params();
  const FullState s0{kPi, 0.0, 0.1, 0.1};

  IntegratorConfig mcfg;
  const LyapunovRecord rec = mlce(p, s0, mcfg, 1e4, 1.0, 12022ULL);

  IntegratorConfig scfg;
  scfg.t_max = 6000.0;
  scfg.store_stride = 0;
  const SectionPointSet sec =
      section(p, s0, scfg, SectionPlane::V1ZeroInReducedProjection, 500);
  const double dev = polyline_deviation(sec.points);

  const ClassifierConfig cc;
  const double wall = watch.seconds();
  detail = format("chi(1e4) = %.2e, curve deviation %.4f on %zu points (%.1f s)",
                  rec.final_chi(), dev, sec.points.size(), wall);
  return rec.final_chi() < cc.chi_threshold && !sec.truncated &&
         dev < cc.curve_dev_frac && wall < 60.0;
}

// 7. The hard-kicked inverted start is chaotic, and robustly so: for five
//    tangent seeds the exponent comes out positive, its minimum over the
//    last decade of the run clears five times the regular case's final
//    value, and the seeds agree to within ten percent.
bool criterion_7(std::string& detail) {
  Stopwatch watch;
  const Params p = reference_params();

  IntegratorConfig rcfg;
  const double regular_chi =
      mlce(p, FullState{kPi, 0.0, 0.1, 0.1}, rcfg, 1e4, 1.0, 12022ULL)
          .final_chi();

  // This trajectory takes roughly 5e7 accepted steps to reach t = 1e4, so
  // the default step budget has to be raised.
  IntegratorConfig ccfg;
  ccfg.max_steps = 200000000;
  const FullState s0{kPi, 0.0, 20.0, 20.0};
  const SeedStability st =
      chi_vs_seed_stability(p, s0, ccfg, 1e4, 1.0, {1, 2, 3, 4, 5});

  double chi_lo = st.final_chi[0], chi_hi = st.final_chi[0];
  double floor = st.last_decade_min[0];
  bool positive = true;
  for (std::size_t i = 0; i < st.final_chi.size(); ++i) {
    chi_lo = std::min(chi_lo, st.final_chi[i]);
    chi_hi = std::max(chi_hi, st.final_chi[i]);
    floor = std::min(floor, st.last_decade_min[i]);
    positive = positive && st.final_chi[i] > 0.0;
  }
  const double spread = st.relative_spread();

  detail = format(
      "chi in [%.4f, %.4f], last-decade floor %.4f vs 5x regular %.1e, "
      "seed spread %.2f%% (%.0f s)",
      chi_lo, chi_hi, floor, 5.0 * regular_chi, 100.0 * spread,
      watch.seconds());
  return positive && floor > 5.0 * regular_chi && spread < 0.10;
}

// 8. Stepping the second launch speed through 0.1, 0.2, ..., 1.0 classifies
//    the slow starts as regular and the fast ones as chaotic, with at least
//    one of each surviving a doubling of both the section quota and the
//    exponent horizon.
bool criterion_8(std::string& detail) {
  Stopwatch watch;
  const Params p = reference_params();

  IcSweepSpec spec;
  spec.integrator.t_max = 6000.0;
  spec.integrator.store_stride = 0;
  spec.integrator.max_steps = 100000000;
  const SweepResult base = ic_sweep(p, spec, 1);

  IcSweepSpec twice = spec;
  twice.integrator.t_max = 12000.0;
  twice.classifier.min_crossings = 2 * spec.classifier.min_crossings;
  twice.classifier.t_total = 2.0 * spec.classifier.t_total;
  const SweepResult doubled = ic_sweep(p, twice, 1);

  auto letters = [](const SweepResult& r) {
    std::string s;
    for (const SweepOutcome& o : r.outcomes) {
      s += o.failed ? '!'
                    : (o.verdict == Verdict::Regular
                           ? 'R'
                           : (o.verdict == Verdict::Chaotic ? 'C' : '?'));
    }
    return s;
  };

  bool any_failed = false;
  int stable_regular = -1, stable_chaotic = -1;
  for (int n = 0; n <= 9; ++n) {
    const SweepOutcome& a = base.outcomes[n];
    const SweepOutcome& b = doubled.outcomes[n];
    any_failed = any_failed || a.failed || b.failed;
    if (n <= 4 && stable_regular < 0 && a.verdict == Verdict::Regular &&
        b.verdict == Verdict::Regular) {
      stable_regular = n;
    }
    if (n >= 5 && a.verdict == Verdict::Chaotic &&
        b.verdict == Verdict::Chaotic) {
      stable_chaotic = n;
    }
  }

  detail = format(
      "verdicts %s, doubled %s, stable regular at n=%d, stable chaotic at "
      "n=%d (%.0f s)",
      letters(base).c_str(), letters(doubled).c_str(), stable_regular,
      stable_chaotic, watch.seconds());
  return !any_failed && stable_regular >= 0 && stable_chaotic >= 0;
}

// 9. The hand-written Jacobian of the rescaled field agrees with central
//    finite differences to 1e-5 at a hundred random states for each of ten
//    random parameter sets, in under five seconds.
bool criterion_9(std::string& detail) {
  Stopwatch watch;
  SplitMix64 rng(424242ULL);
  double worst = 0.0;
  for (int set = 0; set < 10; ++set) {
    Params p;
    p.m1 = rng.uniform(0.5, 2.0);
    p.m2 = rng.uniform(0.5, 2.0);
    p.m3 = rng.uniform(0.5, 2.0);
    p.l1 = rng.uniform(0.5, 2.0);
    p.l2 = rng.uniform(0.5, 2.0);
    p.l3 = rng.uniform(0.5, 2.0);
    p.k1 = rng.uniform(0.0, 3.0);
    p.k2 = rng.uniform(0.0, 3.0);
    p.F = rng.uniform(-3.0, 3.0);
    p.follower_lever = (set % 2 == 0) ? FollowerLever::L1 : FollowerLever::L2;

    for (int i = 0; i < 100; ++i) {
      const FullState s{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                        rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
      const Mat4 jac = jacobian(p, s);
      const std::array<double, 4> x = s.to_array();
      for (int col = 0; col < 4; ++col) {
        const double h = 1e-6;
        std::array<double, 4> xp = x, xm = x;
        xp[col] += h;
        xm[col] -= h;
        const std::array<double, 4> fp =
            rescaled_rhs(p, FullState::from_array(xp)).to_array();
        const std::array<double, 4> fm =
            rescaled_rhs(p, FullState::from_array(xm)).to_array();
        for (int row = 0; row < 4; ++row) {
          const double fd = (fp[row] - fm[row]) / (2.0 * h);
          worst = std::max(worst, std::fabs(jac[row][col] - fd));
        }
      }
    }
  }

  const double wall = watch.seconds();
  detail = format(
      "max |analytic - finite difference| = %.2e over 10 x 100 states "
      "(%.2f s)",
      worst, wall);
  return worst < 1e-5 && wall < 5.0;
}

// 10. With the force on, the field in coordinate-momentum variables is still
//     divergence-free to 1e-5 at a hundred random states, while the same
//     states in the velocity chart show divergence above 1e-3, so the probe
//     genuinely discriminates between the two charts.
bool criterion_10(std::string& detail) {
  Stopwatch watch;
  const Params p = reference_params();
  SplitMix64 rng(1337ULL);
  double worst_momentum = 0.0, best_velocity = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FullState s{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                      rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    worst_momentum = std::max(
        worst_momentum, std::fabs(hamiltonian_divergence(p, to_momenta(p, s))));
    best_velocity =
        std::max(best_velocity, std::fabs(velocity_divergence(p, s)));
  }

  const double wall = watch.seconds();
  detail = format(
      "momentum-chart divergence <= %.2e, velocity-chart divergence reaches "
      "%.2e (%.2f s)",
      worst_momentum, best_velocity, wall);
  return worst_momentum < 1e-5 && best_velocity > 1e-3 && wall < 5.0;
}

}  // namespace

int main(int argc, char** argv) {
  using CriterionFn = bool (*)(std::string&);
  const CriterionFn criteria[10] = {
      criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
      criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > 10) {
      std::fprintf(stderr, "usage: %s [criterion-number ...]\n", argv[0]);
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty()) {
    for (int n = 1; n <= 10; ++n) selected.push_back(n);
  }

  int failures = 0;
  for (int n : selected) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[n - 1](detail);
    } catch (const std::exception& e) {
      detail = format("exception: %s", e.what());
    }
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
