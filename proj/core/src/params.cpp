#include "ziegler/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ziegler {

const char* to_string(FollowerLever lever) {
  return lever == FollowerLever::L1 ? "L1" : "L2";
}

bool Params::is_balanced() const {
  const double scale = std::fmax(std::fabs(m1 * l1), std::fabs(m3 * l3));
  return std::fabs(m1 * l1 - m3 * l3) <= 1e-12 * std::fmax(1.0, scale);
}

void Params::validate() const {
  const struct {
    const char* name;
    double value;
  } entries[] = {{"m1", m1}, {"m2", m2}, {"m3", m3}, {"l1", l1}, {"l2", l2},
                 {"l3", l3}, {"k1", k1}, {"k2", k2}, {"F", F}};
  for (const auto& e : entries) {
    if (!std::isfinite(e.value)) {
      std::ostringstream os;
      os << "Params." << e.name << " is not finite";
      throw std::domain_error(os.str());
    }
  }
  const struct {
    const char* name;
    double value;
  } positive[] = {{"m1", m1}, {"m2", m2}, {"m3", m3},
                  {"l1", l1}, {"l2", l2}, {"l3", l3}};
  for (const auto& e : positive) {
    if (e.value <= 0.0) {
      std::ostringstream os;
      os << "Params." << e.name << " must be positive, got " << e.value;
      throw std::domain_error(os.str());
    }
  }
  if (k1 < 0.0 || k2 < 0.0) {
    throw std::domain_error("Params.k1 and Params.k2 must be non-negative");
  }
}

Params reference_params() {
  Params p;
  p.m1 = 1.0;
  p.m2 = 1.0;
  p.m3 = 1.5;
  p.l1 = p.l2 = p.l3 = 1.0;
  p.k1 = 1.0;
  p.k2 = 1.0;
  p.F = 2.0;
  return p;
}

}  // namespace ziegler
