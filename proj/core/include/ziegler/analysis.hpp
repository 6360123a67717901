#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ziegler/integrate.hpp"
#include "ziegler/params.hpp"
#include "ziegler/periodic.hpp"
#include "ziegler/states.hpp"

namespace ziegler {

// Coordinate plane used to slice a projected trajectory. These are sections
// of projections, not return maps: distinct trajectories may deposit points
// at the same location, and one trajectory may visit a point from several
// sheets.
enum class SectionPlane {
  V1ZeroInReducedProjection,  // slice v1 = 0, record (phi1 mod 2pi, v2)
  Phi2EqualsPi,               // slice phi2 = pi (mod 2pi), record (phi1, v1)
};

const char* to_string(SectionPlane plane);

struct SectionPoint {
  double x = 0.0;
  double y = 0.0;
  int direction = 0;  // sign of the sliced coordinate's rate at the crossing
  double t = 0.0;
};

struct SectionPointSet {
  SectionPlane plane = SectionPlane::V1ZeroInReducedProjection;
  Params params;
  FullState initial_state;
  std::vector<SectionPoint> points;  // both crossing directions, time order
  bool truncated = false;  // horizon or step budget ran out before the quota

  // Points crossing in one direction only (+1 or -1).
  std::vector<SectionPoint> filtered(int direction) const;
};

// Integrates the full system from s0 and collects crossings of the chosen
// plane until `min_crossings` points are found or cfg.t_max is exhausted
// (the result is then marked truncated). Angles are wrapped only here, at
// recording time, never inside the integration.
SectionPointSet section(const Params& p, const FullState& s0,
                        const IntegratorConfig& cfg, SectionPlane plane,
                        int min_crossings = 500);

// ---- point-cloud diagnostics ------------------------------------------

// Largest pairwise distance of the cloud (0 for fewer than 2 points).
double cloud_diameter(const std::vector<SectionPoint>& pts);

// Convex hull as a counterclockwise polygon (monotone chain); collinear
// boundary points dropped. Fewer than 3 distinct points give a degenerate
// hull of size < 3.
std::vector<SectionPoint> convex_hull(std::vector<SectionPoint> pts);

// Area of the convex hull of the cloud (0 for degenerate clouds).
double hull_area(const std::vector<SectionPoint>& pts);

// How far the cloud is from a one-dimensional filament: the maximum over
// points of the distance to the segment through the point's two nearest
// neighbors, divided by the cloud diameter. Near 0 for points sampled from
// a smooth curve; order 0.1 and above for an area-filling cloud.
double polyline_deviation(const std::vector<SectionPoint>& pts);

// ---- regular / chaotic classification ---------------------------------

enum class Verdict { Regular, Chaotic, Inconsistent };

const char* to_string(Verdict v);

// Thresholds for the two independent diagnostics. A trajectory is Regular
// when the exponent estimate stays under chi_threshold AND the section
// passes the curve test; Chaotic when both diagnostics fail; disagreement
// is reported as Inconsistent rather than resolved silently.
struct ClassifierConfig {
  double chi_threshold = 0.01;
  double curve_dev_frac = 0.01;
  double hull_ratio = 10.0;  // hull-area factor separating spread clouds
  int min_crossings = 500;
  double t_total = 1e4;  // exponent horizon, rescaled time
  double renorm_interval = 1.0;
  std::uint64_t tangent_seed = 12022;
};

Verdict classify(double chi, double curve_deviation, const ClassifierConfig& c);

// ---- parameter and initial-condition sweeps ---------------------------

// Per-value record of a sweep. Force sweeps fill the periodicity fields;
// initial-condition sweeps fill the exponent/section fields. `value` echoes
// the swept parameter so each outcome is self-describing.
struct SweepOutcome {
  double value = 0.0;
  bool from_refinement = false;  // appended by bisection, not the input scan

  bool periodic = false;
  int crossing_count = 0;
  double period = 0.0;
  NotPeriodicReason reason = NotPeriodicReason::NoSecondCrossingWithinHorizon;

  double chi = 0.0;
  double curve_deviation = 0.0;
  double hull_area = 0.0;
  Verdict verdict = Verdict::Inconsistent;
  SectionPointSet section;

  bool failed = false;  // evaluation threw; error holds the message
  std::string error;
};

struct SweepResult {
  std::string parameter;  // name of the swept quantity
  std::vector<SweepOutcome> outcomes;

  // Critical-force bracketing (force sweeps only): the second plane
  // crossing exists at bracket_lo and is gone at bracket_hi.
  bool bracket_found = false;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  // Number of (>= 2 crossings) -> (< 2 crossings) flips along the scan; a
  // clean mechanism shows exactly one.
  int transition_count = 0;
};

// Scans the follower-force magnitude over strictly increasing F_values,
// running the periodic-orbit detector from the same starting state each
// time, then bisects the first crossing-loss interval down to
// bracket_width. Requires k2 = 0 (the detector's setting).
SweepResult force_sweep(const Params& p_base, const ReducedState& s0,
                        const std::vector<double>& F_values,
                        const DetectConfig& cfg, double bracket_width = 0.05);

// Initial-condition family for the sweep below: states base with the last
// velocity component replaced by v2_step * (n + 1), for n in
// [n_min, n_max].
struct IcSweepSpec {
  FullState base{3.14159265358979323846, 0.0, 0.1, 0.0};
  double v2_step = 0.1;
  int n_min = 0;
  int n_max = 9;
  IntegratorConfig integrator;
  ClassifierConfig classifier;

  FullState ic_of(int n) const {
    FullState s = base;
    s.v2 = v2_step * (n + 1);
    return s;
  }
};

// For each n: computes a section (v1 = 0 plane), an exponent estimate, and
// a verdict from the two diagnostics. Entries are independent; with
// jobs > 1 they run concurrently and are still reported in index order.
SweepResult ic_sweep(const Params& p, const IcSweepSpec& spec, int jobs = 1);

}  // namespace ziegler
