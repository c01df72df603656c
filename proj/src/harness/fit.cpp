#include "opinionfp/harness/fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace opinionfp::harness {

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> value, double t0, double t1) {
  if (t.size() != value.size()) throw InvalidArgument("fit: t and value differ in length");
  if (!(t1 > t0)) throw DegenerateWindow("fit window [" + std::to_string(t0) + ", " + std::to_string(t1) + "] is empty");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1) continue;
    if (!(value[i] > 0.0)) {
      throw PositivityError("fit: value " + std::to_string(value[i]) + " at t=" + std::to_string(t[i]) +
                            " is not positive");
    }
    xs.push_back(t[i]);
    ys.push_back(std::log(value[i]));
  }
  if (xs.size() < 10) {
    throw DegenerateWindow("fit window holds " + std::to_string(xs.size()) + " samples, need at least 10");
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateWindow("fit window has no spread in t");

  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.t0 = t0;
  fit.t1 = t1;
  fit.samples = xs.size();
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

DecayFit fit_second_half(std::span<const double> t, std::span<const double> value) {
  if (t.empty()) throw DegenerateWindow("fit: empty series");
  const double t_last = t.back();
  const double t_first = t.front();
  return fit_decay_rate(t, value, t_first + 0.5 * (t_last - t_first), t_last);
}

}  // namespace opinionfp::harness
