#include "opinionfp/functionals.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "opinionfp/errors.hpp"

namespace opinionfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// u log u - u + 1 written in r = u - 1. Series near r = 0 keeps the r^2/2
// leading term exact.
double entropy_integrand(double r) {
  if (r == -1.0) return 1.0;
  if (std::abs(r) < 1e-2) {
    double sum = 0.0;
    double power = r * r;
    for (int k = 2; k < 12; ++k) {
      const double term = power / (k * (k - 1.0));
      sum += (k % 2 == 0) ? term : -term;
      power *= r;
    }
    return sum;
  }
  return (1.0 + r) * std::log1p(r) - r;
}

void require_positive(const DensityField& f, const char* what) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] > 0.0)) {
      throw PositivityError(std::string(what) + ": density must be strictly positive, cell " + std::to_string(i) +
                            " holds " + std::to_string(f[i]));
    }
  }
}

double fisher_sum(const DensityField& f, std::span<const double> log_ratio, double lambda) {
  const Grid& grid = f.grid;
  const double dy = grid.dy();
  double sum = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double y = grid.interface(k);
    const double slope = (log_ratio[k] - log_ratio[k - 1]) / dy;
    sum += (1.0 - y * y) * slope * slope * 0.5 * (f[k - 1] + f[k]);
  }
  return 0.5 * lambda * sum * dy;
}

std::vector<double> cell_log_equilibrium(const BetaEquilibrium& eq, const Grid& grid) {
  std::vector<double> logs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    logs[i] = eq.log_cell_average(grid.interface(i), grid.interface(i + 1));
  }
  return logs;
}

DensityField exp_normalized(const Grid& grid, const std::vector<double>& logs) {
  double peak = -kInf;
  for (double l : logs) peak = std::max(peak, l);
  DensityField field(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) field[i] = std::exp(logs[i] - peak);
  field.normalize();
  return field;
}

}  // namespace

DensityField equilibrium_field(const BetaEquilibrium& eq, const Grid& grid) {
  return exp_normalized(grid, cell_log_equilibrium(eq, grid));
}

DensityField sampled_equilibrium(const BetaEquilibrium& eq, const Grid& grid) {
  std::vector<double> logs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) logs[i] = eq.log_value(grid.center(i));
  return exp_normalized(grid, logs);
}

RatioField log_ratio(const DensityField& f, const DensityField& g) {
  require_same_grid(f, g);
  require_positive(f, "log_ratio");
  require_positive(g, "log_ratio");
  RatioField out{f.grid, std::vector<double>(f.size())};
  for (std::size_t i = 0; i < f.size(); ++i) out.log_ratio[i] = std::log(f[i]) - std::log(g[i]);
  return out;
}

double relative_entropy(const DensityField& f, const DensityField& g) {
  require_same_grid(f, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) {
      sum += g[i];
      continue;
    }
    if (g[i] == 0.0) {
      throw AbsoluteContinuityError("relative_entropy: f > 0 where g = 0 at cell " + std::to_string(i));
    }
    sum += g[i] * entropy_integrand((f[i] - g[i]) / g[i]);
  }
  return sum * f.grid.dy();
}

double weighted_fisher(const DensityField& f, const DensityField& g, double lambda) {
  return fisher_sum(f, log_ratio(f, g).log_ratio, lambda);
}

double weighted_fisher(const DensityField& f, const BetaEquilibrium& eq, double lambda) {
  require_positive(f, "weighted_fisher");
  std::vector<double> lr = cell_log_equilibrium(eq, f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) lr[i] = std::log(f[i]) - lr[i];
  return fisher_sum(f, lr, lambda);
}

double weighted_l2(const DensityField& f, const DensityField& g) {
  require_same_grid(f, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f[i] - g[i];
    if (d == 0.0) continue;
    if (g[i] == 0.0) return kInf;
    sum += d * d / g[i];
  }
  return sum * f.grid.dy();
}

double weighted_l2(const DensityField& f, const BetaEquilibrium& eq) {
  return weighted_l2(f, equilibrium_field(eq, f.grid));
}

double l1_distance(const DensityField& f, const DensityField& g) {
  require_same_grid(f, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += std::abs(f[i] - g[i]);
  return sum * f.grid.dy();
}

double ckp_slack(const DensityField& f, const DensityField& g) {
  double h = 0.0;
  try {
    h = relative_entropy(f, g);
  } catch (const AbsoluteContinuityError&) {
    return kInf;
  }
  const double l1 = l1_distance(f, g);
  return 2.0 * h - l1 * l1;
}

double ls_slack(const DensityField& phi, const KineticParams& p) {
  const double k = log_sobolev_constant(p);
  require_positive(phi, "ls_slack");
  const BetaEquilibrium eq(p);
  const DensityField v = equilibrium_field(eq, phi.grid);
  return k * weighted_fisher(phi, v, p.lambda()) - relative_entropy(phi, v);
}

double uniform_ls_slack(const Grid& grid, std::span<const double> w) {
  if (w.size() != grid.size()) {
    throw GridMismatch("grid function has " + std::to_string(w.size()) + " values for a " +
                       std::to_string(grid.size()) + "-cell grid");
  }
  const double dy = grid.dy();
  double norm2 = 0.0;
  double entropy = 0.0;
  for (double x : w) {
    const double sq = x * x;
    norm2 += sq;
    if (sq > 0.0) entropy += sq * std::log(sq);
  }
  norm2 *= dy;
  entropy *= dy;
  if (norm2 == 0.0) throw InvalidArgument("uniform_ls_slack: w vanishes identically");

  double dirichlet = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double y = grid.interface(k);
    const double slope = (w[k] - w[k - 1]) / dy;
    dirichlet += (1.0 - y * y) * slope * slope;
  }
  dirichlet *= dy;

  const double lhs = entropy - norm2 * std::log(norm2 / 2.0);
  return 2.0 * dirichlet - lhs;
}

}  // namespace opinionfp
