#include "opinionfp/boltzmann_mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opinionfp/errors.hpp"
#include "opinionfp/rng.hpp"
#include "pair_rule.hpp"

namespace opinionfp {

namespace {

// Stream numbering inside a run: 2s shuffles sweep s, 2s+1 feeds its noise.
constexpr std::uint64_t kSamplingStream = ~0ULL;

}  // namespace

InteractionParams::InteractionParams(double gamma, double sigma2, double epsilon)
    : gamma_(gamma), sigma2_(sigma2), epsilon_(epsilon) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in (0, 1), got " + std::to_string(gamma));
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw InvalidArgument("sigma2 must be finite and nonnegative, got " + std::to_string(sigma2));
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
}

Ensemble sample_ensemble(const DensityField& f, std::size_t n_agents, std::uint64_t seed) {
  if (!f.is_nonnegative() || !(f.mass() > 0.0)) throw InvalidArgument("cannot sample from a field without mass");
  const Grid& grid = f.grid;
  std::vector<double> cdf(grid.size());
  double running = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    running += f[i];
    cdf[i] = running;
  }
  for (double& c : cdf) c /= running;

  std::mt19937_64 rng(stream_key(seed, kSamplingStream));
  Ensemble e;
  e.seed = seed;
  e.opinions.resize(n_agents);
  for (double& x : e.opinions) {
    const double u = std::generate_canonical<double, 53>(rng);
    const double w = std::generate_canonical<double, 53>(rng);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto cell = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), grid.size() - 1));
    x = grid.interface(cell) + w * grid.dy();
  }
  return e;
}

std::optional<std::pair<double, double>> binary_interact(double x, double x_star, double gamma, double eta,
                                                         double eta_star) {
  if (!detail::apply_pair(x, x_star, gamma, eta, eta_star)) return std::nullopt;
  return std::pair{x, x_star};
}

SweepStats mc_step(Ensemble& e, const InteractionParams& p, kernels::Execution ex) {
  if (e.size() % 2 != 0) {
    throw InvalidArgument("a sweep pairs every agent; ensemble size " + std::to_string(e.size()) + " is odd");
  }
  // Random disjoint pairing: shuffle, then pair neighbours.
  std::mt19937_64 shuffler(stream_key(e.seed, 2 * e.sweeps));
  std::shuffle(e.opinions.begin(), e.opinions.end(), shuffler);
  SweepStats stats;
  stats.pairs = e.size() / 2;
  stats.rejected = kernels::interact_pairs(ex, e.opinions, p.scaled_gamma(), p.scaled_sigma2(),
                                           stream_key(e.seed, 2 * e.sweeps + 1));
  e.sweeps += 1;
  e.time = static_cast<double>(e.sweeps);
  return stats;
}

std::uint64_t sweeps_for(double t_fp, const InteractionParams& p) {
  if (!(t_fp >= 0.0)) throw InvalidArgument("Fokker-Planck time must be nonnegative");
  // Tolerate representation error in t_fp / (eps gamma) before rounding up.
  const double exact = t_fp / p.fp_time_per_sweep();
  return static_cast<std::uint64_t>(std::ceil(exact * (1.0 - 1e-12)));
}

QuasiInvariantResult quasi_invariant_run(Ensemble& e, const InteractionParams& p, double t_fp, const Grid& grid,
                                         kernels::Execution ex) {
  QuasiInvariantResult out{DensityField(grid), sweeps_for(t_fp, p), 0, 0};
  for (std::uint64_t s = 0; s < out.sweeps; ++s) {
    const SweepStats st = mc_step(e, p, ex);
    out.pairs += st.pairs;
    out.rejected += st.rejected;
  }
  out.histogram = histogram(e, grid, ex);
  return out;
}

DensityField histogram(const Ensemble& e, const Grid& grid, kernels::Execution ex) {
  if (e.size() == 0) throw InvalidArgument("histogram of an empty ensemble");
  const std::vector<std::uint64_t> counts = kernels::bin_counts(ex, e.opinions, grid.size());
  DensityField f(grid);
  const double scale = 1.0 / (static_cast<double>(e.size()) * grid.dy());
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = static_cast<double>(counts[i]) * scale;
  return f;
}

Moments moments(const Ensemble& e) {
  if (e.size() == 0) throw InvalidArgument("moments of an empty ensemble");
  const auto n = static_cast<double>(e.size());
  double sum = 0.0;
  for (double x : e.opinions) sum += x;
  Moments out;
  out.mean = sum / n;
  if (e.size() > 1) {
    double ss = 0.0;
    for (double x : e.opinions) ss += (x - out.mean) * (x - out.mean);
    out.variance = ss / (n - 1.0);
  }
  return out;
}

}  // namespace opinionfp
