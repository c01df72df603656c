#include "opinionfp/harness/battery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "opinionfp/functionals.hpp"
#include "opinionfp/rng.hpp"
#include "opinionfp/trig_transform.hpp"

namespace opinionfp::harness {

DensityField random_tilted_density(const DensityField& v, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> amp(0.0, 3.0);
  const double scale = amp(rng);
  double a[6];
  double b[6];
  for (int k = 0; k < 6; ++k) {
    a[k] = normal(rng) / (k + 1);
    b[k] = normal(rng) / (k + 1);
  }
  DensityField phi(v.grid);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double y = v.grid.center(i);
    double h = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double arg = (k + 1) * std::numbers::pi * (y + 1.0) / 2.0;
      h += a[k] * std::cos(arg) + b[k] * std::sin(arg);
    }
    phi[i] = v[i] * std::exp(scale * h / 3.0);
  }
  phi.normalize();
  return phi;
}

DensityField random_mixture_density(const Grid& grid, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> centre(-0.9, 0.9);
  std::uniform_real_distribution<double> width(0.05, 0.5);
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  const int k = count(rng);
  std::vector<double> mu(k), sd(k), w(k);
  for (int j = 0; j < k; ++j) {
    mu[j] = centre(rng);
    sd[j] = width(rng);
    w[j] = weight(rng);
  }
  DensityField f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid.center(i);
    double s = 1e-3;
    for (int j = 0; j < k; ++j) s += w[j] * std::exp(-0.5 * std::pow((y - mu[j]) / sd[j], 2)) / sd[j];
    f[i] = s;
  }
  f.normalize();
  return f;
}

std::vector<double> random_grid_function(const Grid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const double offset = normal(rng);
  double c[8];
  for (int k = 0; k < 8; ++k) c[k] = normal(rng) / (k + 1);
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid.center(i);
    double s = offset;
    for (int k = 0; k < 8; ++k) s += c[k] * std::cos((k + 1) * std::acos(y));  // Chebyshev T_{k+1}
    w[i] = s;
  }
  return w;
}

LsPointReport verify_ls_point(const KineticParams& p, std::size_t n, std::size_t samples, std::uint64_t seed) {
  LsPointReport r;
  r.lambda = p.lambda();
  r.m = p.m();
  r.k = log_sobolev_constant(p);
  r.rho = bakry_emery_rho(p);
  r.rho_numeric = minimize_w_second(p).min_value;
  r.min_ls_slack = std::numeric_limits<double>::infinity();
  r.min_uniform_slack = std::numeric_limits<double>::quiet_NaN();

  const Grid grid(n);
  const DensityField v = equilibrium_field(BetaEquilibrium(p), grid);
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const DensityField phi = (s % 2 == 0) ? random_tilted_density(v, rng) : random_mixture_density(grid, rng);
    r.min_ls_slack = std::min(r.min_ls_slack, ls_slack(phi, p));
  }
  bool ok = r.min_ls_slack >= -kLsSlackTolerance && std::abs(r.rho_numeric - r.rho) <= kRhoTolerance;

  if (p.lambda() == 1.0 && p.m() == 0.0) {
    r.min_uniform_slack = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
      const std::vector<double> w = random_grid_function(grid, rng);
      r.min_uniform_slack = std::min(r.min_uniform_slack, uniform_ls_slack(grid, w));
    }
    ok = ok && r.min_uniform_slack >= -kLsSlackTolerance;
  }
  r.passed = ok;
  return r;
}

std::vector<double> default_m_values(double lambda) {
  const double c = std::min(1.0 - lambda / 2.0, 0.95);
  if (!(c > 0.0)) return {};
  return {-c, -c / 2.0, 0.0, c / 2.0, c};
}

}  // namespace opinionfp::harness
