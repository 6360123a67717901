#include "ziegler/observe.hpp"

#include <cmath>
#include <stdexcept>

namespace ziegler {

double energy(const Params& p, const FullState& s) {
  const double c = std::cos(s.phi1);
  const double w = s.v1 + s.v2;  // angular velocity of the outer rod
  const double t1 = 0.5 * p.m1 *
                    (s.v2 * s.v2 * p.l2 * p.l2 + w * w * p.l1 * p.l1 +
                     2.0 * p.l1 * p.l2 * s.v2 * w * c);
  const double t2 = 0.5 * p.m2 * s.v2 * s.v2 * p.l2 * p.l2;
  const double t3 = 0.5 * p.m3 *
                    (s.v2 * s.v2 * p.l2 * p.l2 + w * w * p.l3 * p.l3 -
                     2.0 * p.l2 * p.l3 * s.v2 * w * c);
  const double potential =
      0.5 * p.k1 * s.phi1 * s.phi1 + 0.5 * p.k2 * s.phi2 * s.phi2;
  return t1 + t2 + t3 + potential;
}

double momentum_integral(const Params& p, const FullState& s) {
  const double c = std::cos(s.phi1);
  const double w = s.v1 + s.v2;
  const double g1 = 0.5 * p.m1 *
                    (2.0 * s.v2 * p.l2 * p.l2 + 2.0 * w * p.l1 * p.l1 +
                     2.0 * p.l1 * p.l2 * c * (s.v1 + 2.0 * s.v2));
  const double g2 = p.m2 * s.v2 * p.l2 * p.l2;
  const double g3 = 0.5 * p.m3 *
                    (2.0 * s.v2 * p.l2 * p.l2 + 2.0 * w * p.l3 * p.l3 -
                     2.0 * p.l2 * p.l3 * (s.v1 + 2.0 * s.v2) * c);
  return g1 + g2 + g3;
}

double momentum_integral(const Params& p, const ReducedState& s) {
  return momentum_integral(p, s.lift());
}

MomentumState to_momenta(const Params& p, const FullState& s) {
  const InertiaAndForce c = inertia_and_force(p, s);
  MomentumState ms;
  ms.phi1 = s.phi1;
  ms.phi2 = s.phi2;
  ms.p1 = c.a11 * s.v1 + c.a12 * s.v2;
  ms.p2 = c.a21 * s.v1 + c.a22 * s.v2;
  return ms;
}

FullState from_momenta(const Params& p, const MomentumState& ms) {
  FullState probe{ms.phi1, ms.phi2, 0.0, 0.0};
  const InertiaAndForce c = inertia_and_force(p, probe);
  const double det = c.det();
  const double scale = std::fmax(1.0, std::fabs(c.a11 * c.a22));
  if (!(det > 1e-12 * scale)) {
    throw std::domain_error("inertia matrix numerically singular");
  }
  FullState s;
  s.phi1 = ms.phi1;
  s.phi2 = ms.phi2;
  s.v1 = (c.a22 * ms.p1 - c.a12 * ms.p2) / det;
  s.v2 = (c.a11 * ms.p2 - c.a21 * ms.p1) / det;
  return s;
}

MomentumState momentum_rhs(const Params& p, const MomentumState& ms) {
  const FullState s = from_momenta(p, ms);
  const FullState ds = full_rhs(p, s);
  const InertiaAndForce c = inertia_and_force(p, s);
  const InertiaAndForceRates rates = inertia_and_force_rates(p, s);

  // d/dt (A(phi1) v) = (dA/dphi1) v * phi1' + A * dv/dt, with dA11 = 0.
  MomentumState out;
  out.phi1 = ds.phi1;
  out.phi2 = ds.phi2;
  out.p1 = rates.da12_dphi1 * s.v2 * s.v1 + c.a11 * ds.v1 + c.a12 * ds.v2;
  out.p2 = (rates.da12_dphi1 * s.v1 + rates.da22_dphi1 * s.v2) * s.v1 +
           c.a12 * ds.v1 + c.a22 * ds.v2;
  return out;
}

double hamiltonian_divergence(const Params& p, const MomentumState& ms,
                              double step) {
  if (!(step > 0.0)) throw std::domain_error("divergence step must be positive");
  double div = 0.0;
  const double coords[4] = {ms.phi1, ms.phi2, ms.p1, ms.p2};
  for (int i = 0; i < 4; ++i) {
    const double h = step * std::fmax(1.0, std::fabs(coords[i]));
    MomentumState hi = ms, lo = ms;
    double* slot_hi = i == 0 ? &hi.phi1 : i == 1 ? &hi.phi2 : i == 2 ? &hi.p1 : &hi.p2;
    double* slot_lo = i == 0 ? &lo.phi1 : i == 1 ? &lo.phi2 : i == 2 ? &lo.p1 : &lo.p2;
    *slot_hi += h;
    *slot_lo -= h;
    const MomentumState fhi = momentum_rhs(p, hi);
    const MomentumState flo = momentum_rhs(p, lo);
    const double comp_hi[4] = {fhi.phi1, fhi.phi2, fhi.p1, fhi.p2};
    const double comp_lo[4] = {flo.phi1, flo.phi2, flo.p1, flo.p2};
    div += (comp_hi[i] - comp_lo[i]) / (2.0 * h);
  }
  return div;
}

double velocity_divergence(const Params& p, const FullState& s, double step) {
  if (!(step > 0.0)) throw std::domain_error("divergence step must be positive");
  double div = 0.0;
  const double coords[4] = {s.phi1, s.phi2, s.v1, s.v2};
  for (int i = 0; i < 4; ++i) {
    const double h = step * std::fmax(1.0, std::fabs(coords[i]));
    FullState hi = s, lo = s;
    double* slot_hi = i == 0 ? &hi.phi1 : i == 1 ? &hi.phi2 : i == 2 ? &hi.v1 : &hi.v2;
    double* slot_lo = i == 0 ? &lo.phi1 : i == 1 ? &lo.phi2 : i == 2 ? &lo.v1 : &lo.v2;
    *slot_hi += h;
    *slot_lo -= h;
    const FullState fhi = full_rhs(p, hi);
    const FullState flo = full_rhs(p, lo);
    const double comp_hi[4] = {fhi.phi1, fhi.phi2, fhi.v1, fhi.v2};
    const double comp_lo[4] = {flo.phi1, flo.phi2, flo.v1, flo.v2};
    div += (comp_hi[i] - comp_lo[i]) / (2.0 * h);
  }
  return div;
}

}  // namespace ziegler
