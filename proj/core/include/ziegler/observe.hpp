#pragma once

#include "ziegler/model.hpp"
#include "ziegler/params.hpp"
#include "ziegler/states.hpp"

namespace ziegler {

// Total mechanical energy T + P: kinetic energy of the three point masses
// plus the two torsional spring potentials. A first integral when F = 0.
double energy(const Params& p, const FullState& s);

// Momentum conjugate to phi2 (the cyclic integral). A first integral when
// F = 0 and k2 = 0. Also defined for reduced states since phi2 drops out.
double momentum_integral(const Params& p, const FullState& s);
double momentum_integral(const Params& p, const ReducedState& s);

// Legendre transform between velocities and conjugate momenta p = A(phi1)*v.
MomentumState to_momenta(const Params& p, const FullState& s);
FullState from_momenta(const Params& p, const MomentumState& ms);

// Time derivative of (phi1, phi2, p1, p2): the full field pushed forward
// through the Legendre map. Exposed so the divergence probes below operate
// on an honest transformed field rather than hand-derived torque formulas.
MomentumState momentum_rhs(const Params& p, const MomentumState& ms);

// Divergence of the momentum-coordinate field at ms, estimated by central
// finite differences with per-coordinate step `step * max(1, |x_i|)`.
// Vanishes identically (up to finite-difference noise) because the follower
// torque depends on the configuration only.
double hamiltonian_divergence(const Params& p, const MomentumState& ms,
                              double step = 1e-6);

// Divergence of the velocity-coordinate field at s, same estimator. Nonzero
// in general: the velocity chart does not preserve phase volume.
double velocity_divergence(const Params& p, const FullState& s,
                           double step = 1e-6);

}  // namespace ziegler
