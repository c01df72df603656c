#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opinionfp/grid.hpp"
#include "opinionfp/params.hpp"

namespace opinionfp {

/// w / (e^w - 1), continuous at w = 0 and stable for large |w|.
double bernoulli(double w);

/// Chang-Cooper interface weight delta(w) = 1/w - 1/(e^w - 1), w = dy B / D.
/// delta(0) = 1/2, delta -> 0 as w -> +inf and -> 1 as w -> -inf.
double chang_cooper_delta(double w);

/// Drift and diffusion of the flux form
///   dv/dt = d/dy [ D dv/dy + B v ],  D = (lambda/2)(1 - y^2),  B = (1 - lambda) y - m,
/// evaluated at one interface.
struct InterfaceFlux {
  double y = 0.0;
  double drift = 0.0;
  double diffusion = 0.0;
  double delta = 0.5;
  bool no_flux = false;
};

/// One entry per interface k = 0..n; the two boundary interfaces are no-flux.
struct FluxCoefficients {
  Grid grid;
  std::vector<InterfaceFlux> interfaces;
};

FluxCoefficients assemble_coefficients(const KineticParams& p, const Grid& grid);

/// The tridiagonal flux-divergence matrix A with dv/dt = A v. Row i couples
/// cells i-1, i, i+1; lower[0] and upper[n-1] are zero. Columns sum to zero.
struct TridiagonalOperator {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  std::size_t size() const { return diag.size(); }
  std::vector<double> apply(std::span<const double> v) const;
};

TridiagonalOperator flux_operator(const FluxCoefficients& coeffs);

/// Positive unit-mass kernel vector of the discrete operator, built from the
/// zero-flux recurrence v_{k} / v_{k-1} = exp(-w_k) across each interface.
DensityField discretize_equilibrium(const KineticParams& p, const Grid& grid);

/// Backward-Euler stepper for (I - dt A) v_new = v_old with the Thomas
/// factorisation computed once. The system is an M-matrix, so elimination
/// without pivoting keeps every intermediate nonnegative.
class ImplicitStepper {
 public:
  ImplicitStepper(const KineticParams& p, const Grid& grid, double dt);

  const Grid& grid() const { return grid_; }
  double dt() const { return dt_; }
  const TridiagonalOperator& op() const { return op_; }

  /// In-place step; throws NumericalError on a breakdown of the elimination.
  void step(std::span<double> v) const;

 private:
  Grid grid_;
  double dt_;
  TridiagonalOperator op_;
  std::vector<double> sub_;        // -dt * lower
  std::vector<double> sup_prime_;  // modified super-diagonal
  std::vector<double> pivot_;      // modified diagonal
};

struct SolverState {
  double time = 0.0;
  DensityField density;
  KineticParams params;
  double dt = 1e-3;
  long step_count = 0;
};

/// One backward-Euler step.
SolverState step_implicit(const SolverState& s);

/// Functionals of one sample, all relative to the discrete equilibrium.
struct TrajectoryRow {
  double t = 0.0;
  double entropy = 0.0;
  double fisher = 0.0;
  double l1 = 0.0;
  double weighted_l2 = 0.0;
  double mass = 0.0;
  double mean = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  DensityField final_density;
  DensityField equilibrium;
};

/// Integrates from v0 to t_end with step dt, recording a row at step 0, every
/// `sample_every` steps and at the final step. v0 must be nonnegative with
/// unit mass.
Trajectory solve(const KineticParams& p, const DensityField& v0, double dt, double t_end, long sample_every);

/// Row of functionals for `v` against the reference `eq_field`.
TrajectoryRow measure(double t, const DensityField& v, const DensityField& eq_field, double lambda);

}  // namespace opinionfp
