#include "ziegler/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>

#include "ziegler/lyapunov.hpp"
#include "ziegler/model.hpp"

namespace ziegler {

namespace {
constexpr double k_pi = 3.14159265358979323846;
}

const char* to_string(SectionPlane plane) {
  switch (plane) {
    case SectionPlane::V1ZeroInReducedProjection: return "v1_zero";
    default: return "phi2_pi";
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Regular: return "regular";
    case Verdict::Chaotic: return "chaotic";
    default: return "inconsistent";
  }
}

std::vector<SectionPoint> SectionPointSet::filtered(int direction) const {
  std::vector<SectionPoint> out;
  for (const SectionPoint& pt : points)
    if (pt.direction == direction) out.push_back(pt);
  return out;
}

SectionPointSet section(const Params& p, const FullState& s0,
                        const IntegratorConfig& cfg, SectionPlane plane,
                        int min_crossings) {
  if (min_crossings < 1)
    throw std::domain_error("section: min_crossings must be positive");
  SectionPointSet out;
  out.plane = plane;
  out.params = p;
  out.initial_state = s0;

  FullField field{p};

  EventSpec<4> es;
  if (plane == SectionPlane::V1ZeroInReducedProjection) {
    es.kind = EventKind::V1Zero;
    es.coord = 2;
  } else {
    es.kind = EventKind::Phi2ModPi;
    es.coord = 1;
    es.target = k_pi;
    es.angular = true;
  }

  IntegratorConfig icfg = cfg;
  icfg.store_stride = 0;  // only the crossings are kept

  auto on_event = [&](const Event<4>& ev) {
    SectionPoint pt;
    if (plane == SectionPlane::V1ZeroInReducedProjection) {
      pt.x = mod_2pi(ev.state[0]);
      pt.y = ev.state[3];
    } else {
      pt.x = ev.state[0];
      pt.y = ev.state[2];
    }
    pt.direction = ev.direction;
    pt.t = ev.t;
    out.points.push_back(pt);
    return static_cast<int>(out.points.size()) >= min_crossings;  // stop
  };

  Trajectory<4> traj = integrate<4>(field, s0.to_array(), icfg, {es}, on_event);
  out.truncated = traj.truncated() ||
                  static_cast<int>(out.points.size()) < min_crossings;
  return out;
}

double cloud_diameter(const std::vector<SectionPoint>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[i].x - pts[j].x;
      const double dy = pts[i].y - pts[j].y;
      best = std::max(best, dx * dx + dy * dy);
    }
  }
  return std::sqrt(best);
}

namespace {

double cross(const SectionPoint& o, const SectionPoint& a,
             const SectionPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double point_segment_distance(const SectionPoint& p, const SectionPoint& a,
                              const SectionPoint& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double u = 0.0;
  if (len2 > 0.0) {
    u = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    u = std::clamp(u, 0.0, 1.0);
  }
  const double qx = a.x + u * dx;
  const double qy = a.y + u * dy;
  return std::hypot(p.x - qx, p.y - qy);
}

}  // namespace

std::vector<SectionPoint> convex_hull(std::vector<SectionPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const SectionPoint& a, const SectionPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const SectionPoint& a, const SectionPoint& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;

  std::vector<SectionPoint> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  return hull;
}

double hull_area(const std::vector<SectionPoint>& pts) {
  const std::vector<SectionPoint> hull = convex_hull(pts);
  if (hull.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const SectionPoint& a = hull[i];
    const SectionPoint& b = hull[(i + 1) % hull.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * std::fabs(twice);
}

double polyline_deviation(const std::vector<SectionPoint>& pts) {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  const double diameter = cloud_diameter(pts);
  if (!(diameter > 0.0)) return 0.0;

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t n1 = n, n2 = n;
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dx = pts[i].x - pts[j].x;
      const double dy = pts[i].y - pts[j].y;
      const double d = dx * dx + dy * dy;
      if (n1 == n || d < d1) {
        n2 = n1; d2 = d1;
        n1 = j; d1 = d;
      } else if (n2 == n || d < d2) {
        n2 = j; d2 = d;
      }
    }
    worst = std::max(worst, point_segment_distance(pts[i], pts[n1], pts[n2]));
  }
  return worst / diameter;
}

Verdict classify(double chi, double curve_deviation, const ClassifierConfig& c) {
  const bool chi_small = chi < c.chi_threshold;
  const bool on_curve = curve_deviation < c.curve_dev_frac;
  if (chi_small && on_curve) return Verdict::Regular;
  if (!chi_small && !on_curve) return Verdict::Chaotic;
  return Verdict::Inconsistent;
}

namespace {

SweepOutcome eval_force(const Params& p_base, const ReducedState& s0,
                        const DetectConfig& cfg, double F) {
  SweepOutcome o;
  o.value = F;
  try {
    Params p = p_base;
    p.F = F;
    const DetectOutcome d = detect_periodic(p, s0, cfg);
    o.periodic = d.periodic();
    o.crossing_count = d.crossing_count;
    o.reason = d.reason;
    if (d.orbit) o.period = d.orbit->period;
  } catch (const std::exception& e) {
    o.failed = true;
    o.error = e.what();
  }
  return o;
}

bool recrosses(const SweepOutcome& o) {
  return !o.failed && o.crossing_count >= 2;
}

}  // namespace

SweepResult force_sweep(const Params& p_base, const ReducedState& s0,
                        const std::vector<double>& F_values,
                        const DetectConfig& cfg, double bracket_width) {
  if (F_values.empty()) throw std::domain_error("force_sweep: no F values");
  for (std::size_t i = 1; i < F_values.size(); ++i)
    if (!(F_values[i] > F_values[i - 1]))
      throw std::domain_error("force_sweep: F values must be strictly increasing");
  if (!(bracket_width > 0.0))
    throw std::domain_error("force_sweep: bracket_width must be positive");
  if (p_base.k2 != 0.0)
    throw std::domain_error("force_sweep: the plane detector needs k2 = 0");

  SweepResult out;
  out.parameter = "F";
  out.outcomes.reserve(F_values.size());
  for (double F : F_values)
    out.outcomes.push_back(eval_force(p_base, s0, cfg, F));

  // Count the scan's crossing-loss flips and keep the first as the bracket.
  int first_flip = -1;
  for (std::size_t i = 0; i + 1 < F_values.size(); ++i) {
    if (recrosses(out.outcomes[i]) && !recrosses(out.outcomes[i + 1])) {
      out.transition_count += 1;
      if (first_flip < 0) first_flip = static_cast<int>(i);
    }
  }
  if (first_flip < 0) return out;

  double lo = F_values[first_flip];
  double hi = F_values[first_flip + 1];
  while (hi - lo > bracket_width) {
    const double mid = 0.5 * (lo + hi);
    SweepOutcome o = eval_force(p_base, s0, cfg, mid);
    o.from_refinement = true;
    const bool keeps = recrosses(o);
    out.outcomes.push_back(std::move(o));
    (keeps ? lo : hi) = mid;
  }
  out.bracket_found = true;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  return out;
}

namespace {

SweepOutcome eval_ic(const Params& p, const IcSweepSpec& spec, int n) {
  SweepOutcome o;
  o.value = n;
  try {
    const FullState ic = spec.ic_of(n);
    const ClassifierConfig& cc = spec.classifier;
    o.section = section(p, ic, spec.integrator,
                        SectionPlane::V1ZeroInReducedProjection,
                        cc.min_crossings);
    o.crossing_count = static_cast<int>(o.section.points.size());
    o.curve_deviation = polyline_deviation(o.section.points);
    o.hull_area = hull_area(o.section.points);

    const LyapunovRecord rec = mlce(p, ic, spec.integrator, cc.t_total,
                                    cc.renorm_interval, cc.tangent_seed);
    o.chi = rec.final_chi();
    o.verdict = classify(o.chi, o.curve_deviation, cc);
    if (o.section.truncated) {
      o.failed = true;
      o.error = "section truncated before reaching the crossing quota";
    }
  } catch (const std::exception& e) {
    o.failed = true;
    o.error = e.what();
  }
  return o;
}

}  // namespace

SweepResult ic_sweep(const Params& p, const IcSweepSpec& spec, int jobs) {
  if (spec.n_max < spec.n_min)
    throw std::domain_error("ic_sweep: empty index range");
  p.validate();
  const int count = spec.n_max - spec.n_min + 1;

  SweepResult out;
  out.parameter = "n";
  out.outcomes.resize(count);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
      out.outcomes[i] = eval_ic(p, spec, spec.n_min + i);
  };

  const int workers = std::clamp(jobs, 1, count);
  std::vector<std::future<void>> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w)
    pool.push_back(std::async(std::launch::async, worker));
  worker();
  for (std::future<void>& f : pool) f.get();
  return out;
}

}  // namespace ziegler
