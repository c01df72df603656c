#pragma once

#include <cstddef>
#include <span>

#include "opinionfp/errors.hpp"

namespace opinionfp::harness {

/// Window with too few samples or no spread in t.
class DegenerateWindow : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;  ///< 1 when log value is constant on the window
  double t0 = 0.0;
  double t1 = 0.0;
  std::size_t samples = 0;
  double max_residual = 0.0;  ///< largest |residual| in log space
};

/// Least-squares line through (t, log value) for t0 <= t <= t1. Needs at
/// least 10 samples in the window (DegenerateWindow) and positive values
/// there (PositivityError).
DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> value, double t0, double t1);

/// Window [t_mid, t_last] over the second half of the series.
DecayFit fit_second_half(std::span<const double> t, std::span<const double> value);

}  // namespace opinionfp::harness
