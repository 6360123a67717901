#pragma once

// Second-implementation helpers shared by the unit tests. Everything here is
// re-derived straight from the point-mass geometry, independently of the
// library's coefficient formulas: the inner rod turns by phi2 about the
// pivot and carries m2 at its far end (distance l2, the joint); the outer
// rod turns with it plus the relative angle phi1 and carries m1 at distance
// l1 from the joint and m3 at distance l3 on the opposite side.

#include <array>
#include <cmath>

#include "ziegler/params.hpp"
#include "ziegler/rng.hpp"
#include "ziegler/states.hpp"

namespace oracle {

inline double kinetic_energy(const ziegler::Params& p, double phi1,
                             double phi2, double v1, double v2) {
  const double jx = -p.l2 * std::sin(phi2) * v2;  // joint velocity
  const double jy = p.l2 * std::cos(phi2) * v2;
  const double w = v1 + v2;  // outer rod angular velocity
  const double ox = -std::sin(phi1 + phi2) * w;
  const double oy = std::cos(phi1 + phi2) * w;
  auto half_speed2 = [](double x, double y) { return 0.5 * (x * x + y * y); };
  return p.m1 * half_speed2(jx + p.l1 * ox, jy + p.l1 * oy) +
         p.m2 * half_speed2(jx, jy) +
         p.m3 * half_speed2(jx - p.l3 * ox, jy - p.l3 * oy);
}

// T is exactly quadratic in the angular velocities, so three evaluations
// recover the mass matrix without differentiation error.
inline std::array<double, 3> mass_matrix(const ziegler::Params& p, double phi1,
                                         double phi2) {
  const double t10 = kinetic_energy(p, phi1, phi2, 1.0, 0.0);
  const double t01 = kinetic_energy(p, phi1, phi2, 0.0, 1.0);
  const double t11 = kinetic_energy(p, phi1, phi2, 1.0, 1.0);
  return {2.0 * t10, t11 - t10 - t01, 2.0 * t01};  // {M11, M12, M22}
}

// Right-hand side of M(q) vdot = r via the Lagrange recipe,
//   r = dT/dq - (d/dt dT/dv)|_{vdot=0} - dPi/dq + Q,
// with the q-derivatives taken by central differences. The follower force
// acts along the outer rod's line, so it exerts no torque about the joint;
// about the pivot its torque is -F l2 sin(phi1).
inline std::array<double, 2> force_vector(const ziegler::Params& p,
                                          double phi1, double phi2, double v1,
                                          double v2) {
  const double h = 1e-6;
  auto momentum = [&](double q1, double q2) {
    const std::array<double, 3> m = mass_matrix(p, q1, q2);
    return std::array<double, 2>{m[0] * v1 + m[1] * v2, m[1] * v1 + m[2] * v2};
  };
  const std::array<double, 2> pp = momentum(phi1 + h * v1, phi2 + h * v2);
  const std::array<double, 2> pm = momentum(phi1 - h * v1, phi2 - h * v2);
  const double dt_q1 = (kinetic_energy(p, phi1 + h, phi2, v1, v2) -
                        kinetic_energy(p, phi1 - h, phi2, v1, v2)) /
                       (2.0 * h);
  const double dt_q2 = (kinetic_energy(p, phi1, phi2 + h, v1, v2) -
                        kinetic_energy(p, phi1, phi2 - h, v1, v2)) /
                       (2.0 * h);
  return {
      dt_q1 - (pp[0] - pm[0]) / (2.0 * h) - p.k1 * phi1,
      dt_q2 - (pp[1] - pm[1]) / (2.0 * h) - p.k2 * phi2 -
          p.F * p.l2 * std::sin(phi1),
  };
}

inline ziegler::Params random_params(ziegler::SplitMix64& rng,
                                     ziegler::FollowerLever lever) {
  ziegler::Params p;
  p.m1 = rng.uniform(0.4, 2.5);
  p.m2 = rng.uniform(0.4, 2.5);
  p.m3 = rng.uniform(0.4, 2.5);
  p.l1 = rng.uniform(0.4, 2.5);
  p.l2 = rng.uniform(0.4, 2.5);
  p.l3 = rng.uniform(0.4, 2.5);
  p.k1 = rng.uniform(0.0, 3.0);
  p.k2 = rng.uniform(0.0, 3.0);
  p.F = rng.uniform(-3.0, 3.0);
  p.follower_lever = lever;
  return p;
}

inline ziegler::Params random_balanced_params(ziegler::SplitMix64& rng) {
  ziegler::Params p = random_params(rng, ziegler::FollowerLever::L1);
  p.m3 = p.m1 * p.l1 / p.l3;  // coupling vanishes
  p.k2 = 0.0;
  return p;
}

inline ziegler::FullState random_state(ziegler::SplitMix64& rng) {
  constexpr double pi = 3.14159265358979323846;
  return {rng.uniform(-3.0 * pi, 3.0 * pi), rng.uniform(-3.0 * pi, 3.0 * pi),
          rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
}

}  // namespace oracle
