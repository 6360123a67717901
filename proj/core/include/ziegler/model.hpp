#pragma once

#include <array>

#include "ziegler/params.hpp"
#include "ziegler/states.hpp"

namespace ziegler {

// Inertia matrix and generalized force of the equations of motion
//   A(phi1) * (dv1/dt, dv2/dt)^T = (r1, r2)^T.
// A depends on phi1 only and is symmetric positive definite for any valid
// Params; r collects spring torques, the follower torque and the quadratic
// velocity terms.
struct InertiaAndForce {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;

  double det() const { return a11 * a22 - a12 * a21; }
};

InertiaAndForce inertia_and_force(const Params& p, const FullState& s);

// First partial derivatives of the same quantities, used by the analytic
// tangent dynamics. a11 is constant in the state; a12, a22 depend on phi1
// only; r1, r2 depend on everything except (r1, phi2 when k2 = 0).
struct InertiaAndForceRates {
  double da12_dphi1 = 0.0;
  double da22_dphi1 = 0.0;
  double ddet_dphi1 = 0.0;
  double dr1_dphi1 = 0.0;
  double dr1_dv2 = 0.0;
  double dr2_dphi1 = 0.0;
  double dr2_dphi2 = 0.0;
  double dr2_dv1 = 0.0;
  double dr2_dv2 = 0.0;
};

InertiaAndForceRates inertia_and_force_rates(const Params& p, const FullState& s);

// Time derivative of the full state. Solves the 2x2 linear system above.
FullState full_rhs(const Params& p, const FullState& s);

// Reduced system for k2 = 0: phi2 is cyclic and omitted. Requires p.k2 == 0.
ReducedState reduced_rhs(const Params& p, const ReducedState& s);

// Decoupled form of the reduced system for the balanced pendulum
// m1*l1 == m3*l3 (coupling() == 0): phi1 obeys a one-degree-of-freedom
// oscillator and v2 follows by quadrature. Requires p.k2 == 0 and balance.
ReducedState separable_rhs(const Params& p, const ReducedState& s);

// Reduced system plus an odd-in-phi1 perturbation
//   f1 = -alpha * phi1 * sin(v2),  f2 = alpha * phi1 * sin(v1)
// added to the two acceleration components. Keeps the reversibility of the
// unperturbed flow. Requires F = 0 on top of reduced_rhs's preconditions.
ReducedState perturbed_rhs(const Params& p, const ReducedState& s, double alpha);

// The full field multiplied by det(A): a time reparametrization that clears
// denominators, used for tangent-dynamics work.
//   d(phi1) = v1 * det, d(phi2) = v2 * det,
//   d(v1) = a22*r1 - a12*r2, d(v2) = a11*r2 - a12*r1.
FullState rescaled_rhs(const Params& p, const FullState& s);

// Callable adapters for the integrator. Params are validated once at
// construction.
struct FullField {
  Params p;
  explicit FullField(const Params& params);
  void operator()(double t, const std::array<double, 4>& y, std::array<double, 4>& dy) const;
};

struct ReducedField {
  Params p;
  explicit ReducedField(const Params& params);
  void operator()(double t, const std::array<double, 3>& y, std::array<double, 3>& dy) const;
};

struct SeparableField {
  Params p;
  explicit SeparableField(const Params& params);
  void operator()(double t, const std::array<double, 3>& y, std::array<double, 3>& dy) const;
};

struct PerturbedField {
  Params p;
  double alpha = 0.0;
  PerturbedField(const Params& params, double alpha_);
  void operator()(double t, const std::array<double, 3>& y, std::array<double, 3>& dy) const;
};

struct RescaledField {
  Params p;
  explicit RescaledField(const Params& params);
  void operator()(double t, const std::array<double, 4>& y, std::array<double, 4>& dy) const;
};

}  // namespace ziegler
