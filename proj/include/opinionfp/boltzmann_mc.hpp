#pragma once

#include <cstddef>
#include <cstdint>
#include <cmath>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "opinionfp/grid.hpp"
#include "opinionfp/kernels.hpp"

namespace opinionfp {

/// Unscaled interaction parameters and the quasi-invariant scaling epsilon.
/// Each sweep applies the rule with compromise eps*gamma and noise variance
/// eps*sigma2.
class InteractionParams {
 public:
  InteractionParams(double gamma, double sigma2, double epsilon);

  double gamma() const { return gamma_; }
  double sigma2() const { return sigma2_; }
  double epsilon() const { return epsilon_; }
  double scaled_gamma() const { return epsilon_ * gamma_; }
  double scaled_sigma2() const { return epsilon_ * sigma2_; }
  /// sigma2 / gamma, invariant under the scaling.
  double lambda() const { return sigma2_ / gamma_; }
  /// Fokker-Planck time advanced by one sweep: eps * gamma.
  double fp_time_per_sweep() const { return epsilon_ * gamma_; }

 private:
  double gamma_;
  double sigma2_;
  double epsilon_;
};

/// Agent opinions in [-1, 1] plus the seed naming the run's random streams.
struct Ensemble {
  std::vector<double> opinions;
  std::uint64_t seed = 0;
  std::uint64_t sweeps = 0;  ///< kinetic time in sweeps
  double time = 0.0;         ///< kinetic time

  std::size_t size() const { return opinions.size(); }
};

/// Draws N opinions from the piecewise-constant density f (uniform within each
/// cell, cell chosen by inverse CDF).
Ensemble sample_ensemble(const DensityField& f, std::size_t n_agents, std::uint64_t seed);

/// Zero-mean noise with variance sigma2 and support [-sqrt(3 sigma2), sqrt(3 sigma2)],
/// as a function of a uniform variate u in [0, 1).
inline double noise_from_uniform(double u, double sigma2) { return (2.0 * u - 1.0) * std::sqrt(3.0 * sigma2); }

template <class Rng>
double sample_noise(Rng& rng, double sigma2) {
  return noise_from_uniform(std::generate_canonical<double, 53>(rng), sigma2);
}

/// Binary interaction with D(x) = sqrt(1 - x^2):
///   x'  = x  + gamma (x* - x) + D(x) eta
///   x*' = x* + gamma (x - x*) + D(x*) eta*
/// Returns std::nullopt when either outcome leaves [-1, 1].
std::optional<std::pair<double, double>> binary_interact(double x, double x_star, double gamma, double eta,
                                                         double eta_star);

struct SweepStats {
  std::size_t pairs = 0;
  std::size_t rejected = 0;
};

/// One sweep: random disjoint pairing of all agents, one interaction per pair
/// with the scaled parameters. Throws InvalidArgument for an odd ensemble.
SweepStats mc_step(Ensemble& e, const InteractionParams& p,
                   kernels::Execution ex = kernels::Execution::Parallel);

struct QuasiInvariantResult {
  DensityField histogram;
  std::uint64_t sweeps = 0;
  std::uint64_t pairs = 0;
  std::uint64_t rejected = 0;
};

/// Number of sweeps that reach Fokker-Planck time t_fp.
std::uint64_t sweeps_for(double t_fp, const InteractionParams& p);

/// Runs sweeps_for(t_fp) sweeps on `e` and returns the unit-mass histogram.
QuasiInvariantResult quasi_invariant_run(Ensemble& e, const InteractionParams& p, double t_fp, const Grid& grid,
                                         kernels::Execution ex = kernels::Execution::Parallel);

/// Cell counts / (N dy).
DensityField histogram(const Ensemble& e, const Grid& grid,
                       kernels::Execution ex = kernels::Execution::Parallel);

struct Moments {
  double mean = 0.0;
  std::optional<double> variance;  ///< unbiased; empty for a single agent
};

Moments moments(const Ensemble& e);

}  // namespace opinionfp
