#pragma once

#include <optional>
#include <vector>

#include "ziegler/integrate.hpp"
#include "ziegler/params.hpp"
#include "ziegler/states.hpp"

namespace ziegler {

// Coefficients of the linear relation v2 = (K - V(phi1)*v1) / U(phi1) that
// eliminates v2 at a fixed value K of the cyclic momentum, taken verbatim
// from the closed-form reduction. Note: U differs from the inertia entry
// a22 by -m3*l3^2; the model tests pin this difference down explicitly.
struct UVCoefficients {
  double u = 0.0;
  double v = 0.0;
};

UVCoefficients uv_coefficients(const Params& p, double phi1);

// Energy restricted to the plane phi1-v1 at fixed cyclic momentum K, with
// v2 eliminated through uv_coefficients.
double energy_at_fixed_momentum(const Params& p, double K, double phi1, double v1);

// The v1 at which the restricted energy is stationary on the axis phi1 = 0
// for the given K. Linear in K.
double critical_v1(const Params& p, double K);

// A closed orbit of the reduced flow, certified by direct integration.
struct PeriodicOrbit {
  ReducedState anchor;            // first plane crossing, |phi1| <= crossing_tol
  double period = 0.0;            // twice the separation of the two crossings
  double return_defect = 0.0;     // sup-norm gap after one full period
  ReducedState crossing_states[2];
  double crossing_times[2] = {0.0, 0.0};
};

enum class NotPeriodicReason {
  NoSecondCrossingWithinHorizon,
  DefectTooLarge,
  NonTransversalCrossing,
  IntegrationFailure,
};

const char* to_string(NotPeriodicReason r);

struct DetectOutcome {
  std::optional<PeriodicOrbit> orbit;  // engaged iff detection succeeded
  NotPeriodicReason reason = NotPeriodicReason::NoSecondCrossingWithinHorizon;
  int crossing_count = 0;   // plane crossings seen before the search stopped
  double return_defect = 0.0;  // defect measured even on failure, when defined

  bool periodic() const { return orbit.has_value(); }
};

struct DetectConfig {
  IntegratorConfig integrator;  // integrator.t_max is the search horizon
  double return_tol = 1e-6;

  DetectConfig() {
    integrator.t_max = 500.0;
    integrator.store_stride = 0;  // the search needs events, not states
  }
};

// Looks for two transversal crossings of the symmetry plane phi1 = 0 along
// the reduced trajectory from s0. Two such crossings force the orbit closed:
// the flow commutes with the reflection (phi1, v1, v2) -> (-phi1, v1, v2)
// composed with time reversal, and the plane is fixed by the reflection, so
// the arc between the crossings continues symmetrically and returns. The
// candidate period (twice the crossing separation) is then verified by
// direct integration from the first crossing.
//
// Requires p.k2 = 0. If s0 already lies on the plane (|phi1| within
// crossing_tol) and is transversal it counts as the first crossing.
DetectOutcome detect_periodic(const Params& p, const ReducedState& s0,
                              const DetectConfig& cfg = {});

// Counts plane crossings along one verified period of `orbit`, inside the
// window (eps, period * (1 + 1e-2)]. A clean detection yields exactly 2.
int crossings_over_period(const Params& p, const PeriodicOrbit& orbit,
                          const DetectConfig& cfg = {});

struct FamilyGridSpec {
  double v1_min = -1.0, v1_max = 1.0;
  int n1 = 21;
  double v2_min = -1.0, v2_max = 1.0;
  int n2 = 21;
  DetectConfig detect;
};

// Outcomes of detect_periodic over a grid of plane-anchored starting states
// (phi1 = 0, v1_i, v2_j). Row i holds cells with fixed v1_i, ordered by v2.
struct FamilyGrid {
  FamilyGridSpec spec;
  std::vector<DetectOutcome> cells;  // row-major, size n1 * n2

  const DetectOutcome& at(int i, int j) const { return cells[i * spec.n2 + j]; }
  double v1_at(int i) const;
  double v2_at(int j) const;
  int periodic_count() const;
};

// Evaluates the grid, optionally with `jobs` worker threads. Cell results
// are independent, so the outcome does not depend on the schedule.
FamilyGrid map_family(const Params& p, const FamilyGridSpec& spec, int jobs = 1);

// Size of the largest 4-connected component of periodic cells.
int largest_periodic_component(const FamilyGrid& grid);

// Largest ratio (adjacent-cell period jump) / (median jump of its row),
// over all grid rows with at least three periodic adjacent pairs. Small
// values mean the period varies continuously along rows.
double worst_row_period_jump(const FamilyGrid& grid);

}  // namespace ziegler
