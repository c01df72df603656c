#include "opinionfp/fp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "opinionfp/errors.hpp"
#include "opinionfp/functionals.hpp"

namespace opinionfp {

double bernoulli(double w) {
  if (std::abs(w) < 1e-3) return 1.0 - w / 2.0 + w * w / 12.0 - w * w * w * w / 720.0;
  if (w > 0.0) return w * std::exp(-w) / -std::expm1(-w);
  return w / std::expm1(w);
}

double chang_cooper_delta(double w) {
  if (std::abs(w) < 1e-3) return 0.5 - w / 12.0 + w * w * w / 720.0;
  return (1.0 - bernoulli(w)) / w;
}

FluxCoefficients assemble_coefficients(const KineticParams& p, const Grid& grid) {
  const std::size_t n = grid.size();
  FluxCoefficients out{grid, std::vector<InterfaceFlux>(n + 1)};
  for (std::size_t k = 0; k <= n; ++k) {
    InterfaceFlux& f = out.interfaces[k];
    f.y = grid.interface(k);
    f.drift = (1.0 - p.lambda()) * f.y - p.m();
    f.diffusion = 0.5 * p.lambda() * (1.0 - f.y) * (1.0 + f.y);
    if (k == 0 || k == n) {
      f.no_flux = true;
      f.delta = 0.5;
    } else {
      f.delta = chang_cooper_delta(grid.dy() * f.drift / f.diffusion);
    }
  }
  return out;
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> v) const {
  const std::size_t n = size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * v[i];
    if (i > 0) s += lower[i] * v[i - 1];
    if (i + 1 < n) s += upper[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

TridiagonalOperator flux_operator(const FluxCoefficients& coeffs) {
  const std::size_t n = coeffs.grid.size();
  const double dy = coeffs.grid.dy();
  TridiagonalOperator op{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  // Interface k between cells k-1 and k carries the flux
  //   F_k / dy = c_k [ B(-w_k) v_k - B(w_k) v_{k-1} ],  c_k = D_k / dy^2,
  // which is the Chang-Cooper flux with delta(w_k) written through the
  // Bernoulli function.
  for (std::size_t k = 1; k < n; ++k) {
    const InterfaceFlux& f = coeffs.interfaces[k];
    const double c = f.diffusion / (dy * dy);
    const double w = dy * f.drift / f.diffusion;
    const double to_right = c * bernoulli(w);   // removes mass from cell k-1
    const double to_left = c * bernoulli(-w);   // removes mass from cell k
    op.upper[k - 1] += to_left;
    op.diag[k - 1] -= to_right;
    op.lower[k] += to_right;
    op.diag[k] -= to_left;
  }
  return op;
}

DensityField discretize_equilibrium(const KineticParams& p, const Grid& grid) {
  const FluxCoefficients coeffs = assemble_coefficients(p, grid);
  const std::size_t n = grid.size();
  std::vector<double> logs(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const InterfaceFlux& f = coeffs.interfaces[k];
    logs[k] = logs[k - 1] - grid.dy() * f.drift / f.diffusion;
  }
  const double peak = *std::max_element(logs.begin(), logs.end());
  DensityField v(grid);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(logs[i] - peak);
  v.normalize();
  return v;
}

ImplicitStepper::ImplicitStepper(const KineticParams& p, const Grid& grid, double dt)
    : grid_(grid), dt_(dt), op_(flux_operator(assemble_coefficients(p, grid))) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("time step must be positive, got " + std::to_string(dt));
  }
  const std::size_t n = grid.size();
  sub_.assign(n, 0.0);
  sup_prime_.assign(n, 0.0);
  pivot_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = -dt * op_.lower[i];
    const double b = 1.0 - dt * op_.diag[i];
    const double c = -dt * op_.upper[i];
    const double m = i == 0 ? b : b - a * sup_prime_[i - 1];
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw NumericalError("implicit system lost diagonal dominance at row " + std::to_string(i));
    }
    sub_[i] = a;
    pivot_[i] = m;
    sup_prime_[i] = c / m;
  }
}

void ImplicitStepper::step(std::span<double> v) const {
  const std::size_t n = pivot_.size();
  if (v.size() != n) throw GridMismatch("state size does not match the stepper grid");
  v[0] /= pivot_[0];
  for (std::size_t i = 1; i < n; ++i) v[i] = (v[i] - sub_[i] * v[i - 1]) / pivot_[i];
  for (std::size_t i = n - 1; i-- > 0;) v[i] -= sup_prime_[i] * v[i + 1];
}

SolverState step_implicit(const SolverState& s) {
  const ImplicitStepper stepper(s.params, s.density.grid, s.dt);
  SolverState next = s;
  stepper.step(next.density.values);
  next.time += s.dt;
  next.step_count += 1;
  return next;
}

TrajectoryRow measure(double t, const DensityField& v, const DensityField& eq_field, double lambda) {
  TrajectoryRow row;
  row.t = t;
  row.entropy = relative_entropy(v, eq_field);
  const bool positive = std::all_of(v.values.begin(), v.values.end(), [](double x) { return x > 0.0; });
  row.fisher = positive ? weighted_fisher(v, eq_field, lambda) : std::numeric_limits<double>::infinity();
  row.l1 = l1_distance(v, eq_field);
  row.weighted_l2 = weighted_l2(v, eq_field);
  row.mass = v.mass();
  row.mean = v.mean();
  return row;
}

Trajectory solve(const KineticParams& p, const DensityField& v0, double dt, double t_end, long sample_every) {
  if (!v0.is_nonnegative()) throw InvalidArgument("initial density has negative cells");
  if (std::abs(v0.mass() - 1.0) > 1e-9) {
    throw InvalidArgument("initial density must have unit mass, got " + std::to_string(v0.mass()));
  }
  if (!(t_end > 0.0)) throw InvalidArgument("t_end must be positive");
  if (sample_every < 1) throw InvalidArgument("sample_every must be at least 1");

  const ImplicitStepper stepper(p, v0.grid, dt);
  const long steps = std::max(1L, std::lround(t_end / dt));
  Trajectory traj{{}, v0, discretize_equilibrium(p, v0.grid)};
  DensityField& v = traj.final_density;

  traj.rows.push_back(measure(0.0, v, traj.equilibrium, p.lambda()));
  for (long k = 1; k <= steps; ++k) {
    stepper.step(v.values);
    if (k % sample_every == 0 || k == steps) {
      traj.rows.push_back(measure(static_cast<double>(k) * dt, v, traj.equilibrium, p.lambda()));
    }
  }
  return traj;
}

}  // namespace opinionfp
