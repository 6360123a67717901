#pragma once

#include <array>
#include <cmath>

namespace ziegler {

// State of the full four-dimensional system. Angles are kept unwrapped while
// integrating; wrap helpers below reduce them on demand.
struct FullState {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double v1 = 0.0;  // d(phi1)/dt
  double v2 = 0.0;  // d(phi2)/dt

  std::array<double, 4> to_array() const { return {phi1, phi2, v1, v2}; }
  static FullState from_array(const std::array<double, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }
};

// State of the reduced system (k2 = 0), where phi2 is cyclic and dropped.
struct ReducedState {
  double phi1 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;

  std::array<double, 3> to_array() const { return {phi1, v1, v2}; }
  static ReducedState from_array(const std::array<double, 3>& a) {
    return {a[0], a[1], a[2]};
  }
  FullState lift(double phi2 = 0.0) const { return {phi1, phi2, v1, v2}; }
};

// Same configuration, velocities replaced by conjugate momenta.
struct MomentumState {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
};

inline double mod_2pi(double x) {
  const double two_pi = 6.283185307179586476925286766559;
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  return y;
}

// Wrap to (-pi, pi].
inline double wrap_pi(double x) {
  const double pi = 3.1415926535897932384626433832795;
  double y = mod_2pi(x);
  if (y > pi) y -= 2.0 * pi;
  return y;
}

}  // namespace ziegler
