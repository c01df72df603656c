#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "opinionfp/rng.hpp"

namespace opinionfp::detail {

// Updates x and x_star in place; returns false (leaving both untouched) when
// an outcome leaves [-1, 1].
inline bool apply_pair(double& x, double& x_star, double gamma, double eta, double eta_star) {
  const double dx = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  const double ds = std::sqrt(std::max(0.0, (1.0 - x_star) * (1.0 + x_star)));
  const double x_new = x + gamma * (x_star - x) + dx * eta;
  const double s_new = x_star + gamma * (x - x_star) + ds * eta_star;
  if (x_new < -1.0 || x_new > 1.0 || s_new < -1.0 || s_new > 1.0) return false;
  x = x_new;
  x_star = s_new;
  return true;
}

inline double pair_noise(std::uint64_t key, std::uint64_t counter, double half_width) {
  return (2.0 * to_unit_interval(counter_hash(key, counter)) - 1.0) * half_width;
}

}  // namespace opinionfp::detail
