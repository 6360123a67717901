#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ziegler/integrate.hpp"
#include "ziegler/params.hpp"
#include "ziegler/states.hpp"

namespace ziegler {

using Mat4 = std::array<std::array<double, 4>, 4>;

// Analytic Jacobian of rescaled_rhs with respect to (phi1, phi2, v1, v2).
// Validated against central finite differences in the tests; with k2 = 0 the
// phi2 column vanishes identically.
Mat4 jacobian(const Params& p, const FullState& s);

// One maximum-Lyapunov-exponent run: chi(t) = (accumulated log of tangent
// growth) / t, recorded at every renormalization time.
struct LyapunovRecord {
  std::vector<double> times;
  std::vector<double> chi;
  std::vector<double> log_norm_accum;  // running sum of log growth factors
  std::uint64_t seed = 0;
  double t_total = 0.0;
  double renorm_interval = 1.0;
  // Bounds of the time-rescaling density det(A) sampled along the run; the
  // sign of the exponent transfers to the original time exactly because the
  // density stays bounded away from zero and infinity.
  double det_min = 0.0;
  double det_max = 0.0;

  double final_chi() const { return chi.empty() ? 0.0 : chi.back(); }

  // Minimum of chi over the last decade of the run, t in [t_total/10, t_total].
  double last_decade_min() const {
    double m = final_chi();
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] >= 0.1 * t_total) m = std::min(m, chi[i]);
    }
    return m;
  }
};

// Single-vector tangent-growth estimator on an arbitrary augmented system of
// dimension 2N: the first N components carry the base state, the last N the
// tangent vector. The tangent is renormalized to unit Euclidean length every
// `renorm_interval` time units and the log growth factors accumulate into
// chi(t). Used directly by the tests on closed-form linear systems.
template <int N, class AugmentedField>
LyapunovRecord tangent_growth(AugmentedField&& field,
                              const std::array<double, N>& x0,
                              const std::array<double, N>& tangent0,
                              const IntegratorConfig& cfg, double t_total,
                              double renorm_interval) {
  if (!(t_total > 0.0) || !(renorm_interval > 0.0) || renorm_interval > t_total)
    throw std::domain_error("tangent_growth: need 0 < renorm_interval <= t_total");

  std::array<double, 2 * N> y{};
  double norm0 = 0.0;
  for (int i = 0; i < N; ++i) {
    y[i] = x0[i];
    y[N + i] = tangent0[i];
    norm0 += tangent0[i] * tangent0[i];
  }
  norm0 = std::sqrt(norm0);
  if (!(norm0 > 0.0)) throw std::domain_error("tangent_growth: zero tangent seed");
  for (int i = 0; i < N; ++i) y[N + i] /= norm0;

  LyapunovRecord rec;
  rec.t_total = t_total;
  rec.renorm_interval = renorm_interval;
  const std::size_t expected =
      static_cast<std::size_t>(t_total / renorm_interval) + 2;
  rec.times.reserve(expected);
  rec.chi.reserve(expected);
  rec.log_norm_accum.reserve(expected);

  IntegratorConfig icfg = cfg;
  icfg.t_max = t_total;
  icfg.store_stride = 0;

  double accum = 0.0;
  auto renormalize = [&](double t, std::array<double, 2 * N>& state) {
    double norm2 = 0.0;
    for (int i = 0; i < N; ++i) norm2 += state[N + i] * state[N + i];
    const double norm = std::sqrt(norm2);
    accum += std::log(norm);
    const double inv = 1.0 / norm;
    for (int i = 0; i < N; ++i) state[N + i] *= inv;
    rec.times.push_back(t);
    rec.chi.push_back(accum / t);
    rec.log_norm_accum.push_back(accum);
  };

  Trajectory<2 * N> traj = integrate<2 * N>(
      field, y, icfg, {}, nullptr, renorm_interval,
      std::function<void(double, std::array<double, 2 * N>&)>(renormalize));
  if (traj.truncated())
    throw std::runtime_error("tangent_growth: integration failed before t_total");

  // Account for growth past the last renormalization, if any.
  if (rec.times.empty() || rec.times.back() < traj.t_end()) {
    auto state = traj.back();
    renormalize(traj.t_end(), state);
  }
  return rec;
}

// Maximum Lyapunov exponent of the det-rescaled pendulum flow from s0, with
// the tangent seeded deterministically from a 64-bit seed.
LyapunovRecord mlce(const Params& p, const FullState& s0,
                    const IntegratorConfig& cfg, double t_total,
                    double renorm_interval, std::uint64_t seed);

struct SeedStability {
  std::vector<std::uint64_t> seeds;
  std::vector<double> final_chi;
  std::vector<double> last_decade_min;

  // (max - min) / max of the final exponents; 0 for fewer than two seeds.
  double relative_spread() const;
};

// Repeats mlce over the given seeds and summarizes the spread of the final
// exponents. Useful as a convergence diagnostic: a genuine exponent is seed
// independent, so a wide spread flags an unconverged run.
SeedStability chi_vs_seed_stability(const Params& p, const FullState& s0,
                                    const IntegratorConfig& cfg, double t_total,
                                    double renorm_interval,
                                    const std::vector<std::uint64_t>& seeds);

}  // namespace ziegler
