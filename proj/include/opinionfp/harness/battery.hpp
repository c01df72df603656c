#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "opinionfp/grid.hpp"
#include "opinionfp/params.hpp"

namespace opinionfp::harness {

/// Random smooth strictly positive density v e^h / Z, h a random
/// trigonometric polynomial.
DensityField random_tilted_density(const DensityField& v, std::mt19937_64& rng);

/// Random mixture of one to three Gaussians over a small uniform floor.
DensityField random_mixture_density(const Grid& grid, std::mt19937_64& rng);

/// Random sign-changing smooth grid function for the uniform inequality.
std::vector<double> random_grid_function(const Grid& grid, std::mt19937_64& rng);

/// Tolerances of the inequality battery.
inline constexpr double kLsSlackTolerance = 1e-6;
inline constexpr double kRhoTolerance = 1e-10;

struct LsPointReport {
  double lambda = 0.0;
  double m = 0.0;
  double k = 0.0;
  double rho = 0.0;
  double rho_numeric = 0.0;
  double min_ls_slack = 0.0;
  double min_uniform_slack = 0.0;  ///< NaN unless lambda = 1, m = 0
  bool passed = false;
};

/// Runs `samples` random densities (half tilted equilibria, half mixtures)
/// through ls_slack at n cells and compares the minimised W'' with the closed
/// form. At lambda = 1, m = 0 the uniform inequality is checked as well.
LsPointReport verify_ls_point(const KineticParams& p, std::size_t n, std::size_t samples, std::uint64_t seed);

/// Default m values for one lambda: 0, +-c/2 and +-c with c = min(1 - lambda/2, 0.95).
/// The endpoints are dropped when c is 0 (lambda = 2 is never admissible).
std::vector<double> default_m_values(double lambda);

}  // namespace opinionfp::harness
