#pragma once

#include <string>

namespace ziegler {

// Which link length multiplies the follower torque -F*l*sin(phi1) on the
// inner angle equation. The two printed variants of the model disagree on
// this lever; both are kept selectable and the choice is echoed into every
// output artifact.
enum class FollowerLever { L1, L2 };

const char* to_string(FollowerLever lever);

// Mechanical constants of the planar double pendulum with a follower force.
//
// The inner rod OA has length l2 and carries a point mass m2 at the joint A.
// The outer rod BC passes through A with arms l1 (toward B, mass m1) and l3
// (toward C, mass m3). phi2 is the angle of OA against a fixed direction,
// phi1 the angle between OA and AB. Torsional springs of stiffness k1 (at A)
// and k2 (at O) act on phi1 and phi2. F is the signed magnitude of the force
// directed along the outer rod.
struct Params {
  double m1 = 1.0;
  double m2 = 1.0;
  double m3 = 1.0;
  double l1 = 1.0;
  double l2 = 1.0;
  double l3 = 1.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double F = 0.0;
  FollowerLever follower_lever = FollowerLever::L1;

  double lever_arm() const { return follower_lever == FollowerLever::L1 ? l1 : l2; }

  // Coupling coefficient l2*(m1*l1 - m3*l3). It multiplies every cos(phi1)
  // term of the inertia matrix and every sin(phi1) term of the gyroscopic
  // forces; the dynamics of phi1 decouples when it vanishes.
  double coupling() const { return l2 * (m1 * l1 - m3 * l3); }

  bool is_balanced() const;  // m1*l1 == m3*l3 up to round-off

  // Throws std::invalid_argument on non-finite entries, non-positive masses
  // or lengths, or negative stiffnesses.
  void validate() const;
};

// Convenience set used throughout the tests: unit masses and lengths except
// m3 = 3/2, unit stiffnesses, F = 2.
Params reference_params();

}  // namespace ziegler
