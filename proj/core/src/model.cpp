#include "ziegler/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ziegler {

namespace {

void require_finite(const double* x, int n) {
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(x[i])) throw std::domain_error("non-finite state component");
  }
}

void require_cyclic(const Params& p) {
  if (p.k2 != 0.0) {
    throw std::domain_error("reduced dynamics requires k2 = 0 (phi2 must be cyclic)");
  }
}

// Accelerations of the full system by Cramer's rule, with a defensive check
// on the inertia determinant (provably positive for valid Params).
void accelerations(const InertiaAndForce& c, double& dv1, double& dv2) {
  const double det = c.det();
  const double scale = std::fmax(1.0, std::fabs(c.a11 * c.a22));
  if (!(det > 1e-12 * scale)) {
    throw std::domain_error("inertia matrix numerically singular");
  }
  dv1 = (c.a22 * c.r1 - c.a12 * c.r2) / det;
  dv2 = (c.a11 * c.r2 - c.a21 * c.r1) / det;
}

}  // namespace

InertiaAndForce inertia_and_force(const Params& p, const FullState& s) {
  const double st[] = {s.phi1, s.phi2, s.v1, s.v2};
  require_finite(st, 4);

  const double c = std::cos(s.phi1);
  const double sn = std::sin(s.phi1);
  const double mu = p.coupling();  // l2*(m1*l1 - m3*l3)
  const double a11 = p.m1 * p.l1 * p.l1 + p.m3 * p.l3 * p.l3;

  InertiaAndForce out;
  out.a11 = a11;
  out.a12 = a11 + mu * c;
  out.a21 = out.a12;
  out.a22 = p.m1 * p.l2 * p.l2 + p.m1 * p.l1 * p.l1 + p.m2 * p.l2 * p.l2 +
            p.m3 * p.l2 * p.l2 + p.m3 * p.l3 * p.l3 + 2.0 * mu * c;
  out.r1 = -p.k1 * s.phi1 - mu * s.v2 * s.v2 * sn;
  out.r2 = -p.F * p.lever_arm() * sn - p.k2 * s.phi2 +
           mu * s.v1 * (s.v1 + 2.0 * s.v2) * sn;
  return out;
}

InertiaAndForceRates inertia_and_force_rates(const Params& p, const FullState& s) {
  const double st[] = {s.phi1, s.phi2, s.v1, s.v2};
  require_finite(st, 4);

  const double c = std::cos(s.phi1);
  const double sn = std::sin(s.phi1);
  const double mu = p.coupling();
  const double a11 = p.m1 * p.l1 * p.l1 + p.m3 * p.l3 * p.l3;
  const double a12 = a11 + mu * c;

  InertiaAndForceRates r;
  r.da12_dphi1 = -mu * sn;
  r.da22_dphi1 = -2.0 * mu * sn;
  //   det = a11*a22 - a12^2,  d(det) = a11*a22' - 2*a12*a12'
  r.ddet_dphi1 = a11 * r.da22_dphi1 - 2.0 * a12 * r.da12_dphi1;
  r.dr1_dphi1 = -p.k1 - mu * s.v2 * s.v2 * c;
  r.dr1_dv2 = -2.0 * mu * s.v2 * sn;
  r.dr2_dphi1 = -p.F * p.lever_arm() * c + mu * s.v1 * (s.v1 + 2.0 * s.v2) * c;
  r.dr2_dphi2 = -p.k2;
  r.dr2_dv1 = 2.0 * mu * (s.v1 + s.v2) * sn;
  r.dr2_dv2 = 2.0 * mu * s.v1 * sn;
  return r;
}

FullState full_rhs(const Params& p, const FullState& s) {
  const InertiaAndForce c = inertia_and_force(p, s);
  FullState d;
  d.phi1 = s.v1;
  d.phi2 = s.v2;
  accelerations(c, d.v1, d.v2);
  return d;
}

ReducedState reduced_rhs(const Params& p, const ReducedState& s) {
  require_cyclic(p);
  const InertiaAndForce c = inertia_and_force(p, s.lift());
  ReducedState d;
  d.phi1 = s.v1;
  d.v1 = (c.r1 - (c.a12 / c.a22) * c.r2) / (c.a11 - c.a12 * c.a21 / c.a22);
  d.v2 = (c.r2 - (c.a21 / c.a11) * c.r1) / (c.a22 - c.a12 * c.a21 / c.a11);
  return d;
}

ReducedState separable_rhs(const Params& p, const ReducedState& s) {
  require_cyclic(p);
  if (!p.is_balanced()) {
    throw std::domain_error("separable dynamics requires m1*l1 = m3*l3");
  }
  const double st[] = {s.phi1, s.v1, s.v2};
  require_finite(st, 3);

  // With the coupling term zero the inertia matrix is constant and the phi1
  // equation closes on itself. Eliminating dv2/dt from the two equations of
  // motion gives
  //   phi1'' = (F*l*sin(phi1) - k1*phi1)/P - k1*phi1/a11,
  //   v2'    = -phi1'' - k1*phi1/a11,
  // with P = (m1+m2+m3)*l2^2 and a11 = m1*l1^2 + m3*l3^2. The first term of
  // phi1'' alone is sometimes quoted as the whole answer; the -k1*phi1/a11
  // part is required for agreement with reduced_rhs (see the model tests).
  const double cap_p = (p.m1 + p.m2 + p.m3) * p.l2 * p.l2;
  const double a11 = p.m1 * p.l1 * p.l1 + p.m3 * p.l3 * p.l3;
  const double phi1dd =
      (p.F * p.lever_arm() * std::sin(s.phi1) - p.k1 * s.phi1) / cap_p -
      p.k1 * s.phi1 / a11;

  ReducedState d;
  d.phi1 = s.v1;
  d.v1 = phi1dd;
  d.v2 = -phi1dd - p.k1 * s.phi1 / a11;
  return d;
}

ReducedState perturbed_rhs(const Params& p, const ReducedState& s, double alpha) {
  if (p.F != 0.0)
    throw std::domain_error("perturbed_rhs is defined for the force-free system");
  ReducedState d = reduced_rhs(p, s);
  d.v1 += -alpha * s.phi1 * std::sin(s.v2);
  d.v2 += alpha * s.phi1 * std::sin(s.v1);
  return d;
}

FullState rescaled_rhs(const Params& p, const FullState& s) {
  const InertiaAndForce c = inertia_and_force(p, s);
  const double det = c.det();
  FullState d;
  d.phi1 = s.v1 * det;
  d.phi2 = s.v2 * det;
  d.v1 = c.a22 * c.r1 - c.a12 * c.r2;
  d.v2 = c.a11 * c.r2 - c.a12 * c.r1;
  return d;
}

FullField::FullField(const Params& params) : p(params) { p.validate(); }

void FullField::operator()(double, const std::array<double, 4>& y,
                           std::array<double, 4>& dy) const {
  const FullState d = full_rhs(p, FullState::from_array(y));
  dy = d.to_array();
}

ReducedField::ReducedField(const Params& params) : p(params) {
  p.validate();
  if (p.k2 != 0.0) throw std::domain_error("ReducedField requires k2 = 0");
}

void ReducedField::operator()(double, const std::array<double, 3>& y,
                              std::array<double, 3>& dy) const {
  const ReducedState d = reduced_rhs(p, ReducedState::from_array(y));
  dy = d.to_array();
}

SeparableField::SeparableField(const Params& params) : p(params) {
  p.validate();
  if (p.k2 != 0.0) throw std::domain_error("SeparableField requires k2 = 0");
  if (!p.is_balanced()) throw std::domain_error("SeparableField requires m1*l1 = m3*l3");
}

void SeparableField::operator()(double, const std::array<double, 3>& y,
                                std::array<double, 3>& dy) const {
  const ReducedState d = separable_rhs(p, ReducedState::from_array(y));
  dy = d.to_array();
}

PerturbedField::PerturbedField(const Params& params, double alpha_)
    : p(params), alpha(alpha_) {
  p.validate();
  if (p.k2 != 0.0) throw std::domain_error("PerturbedField requires k2 = 0");
  if (p.F != 0.0) throw std::domain_error("PerturbedField requires F = 0");
  if (!std::isfinite(alpha)) throw std::domain_error("PerturbedField: alpha not finite");
}

void PerturbedField::operator()(double, const std::array<double, 3>& y,
                                std::array<double, 3>& dy) const {
  const ReducedState d = perturbed_rhs(p, ReducedState::from_array(y), alpha);
  dy = d.to_array();
}

RescaledField::RescaledField(const Params& params) : p(params) { p.validate(); }

void RescaledField::operator()(double, const std::array<double, 4>& y,
                               std::array<double, 4>& dy) const {
  const FullState d = rescaled_rhs(p, FullState::from_array(y));
  dy = d.to_array();
}

}  // namespace ziegler
