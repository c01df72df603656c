#pragma once

#include <cstddef>
#include <vector>

#include "opinionfp/grid.hpp"
#include "opinionfp/params.hpp"

namespace opinionfp {

/// Derivatives of the potential W in the coordinate z = arcsin y. W itself is
/// never needed: its additive constant disappears into the normalisation.
class TrigPotential {
 public:
  explicit TrigPotential(const KineticParams& p) : params_(p) {}

  const KineticParams& params() const { return params_; }
  /// ((1 - lambda/2) sin z - m) / cos z
  double first(double z) const;
  /// ((1 - lambda/2) - m sin z) / cos^2 z, the exact derivative of first().
  double second(double z) const;

 private:
  KineticParams params_;
};

/// Both throw DomainError unless |z| < pi/2.
double w_prime(const KineticParams& p, double z);
double w_second(const KineticParams& p, double z);

struct WSecondMinimum {
  double z_bar = 0.0;
  double min_value = 0.0;
};

/// Golden-section search of w_second over the open interval, stopped once the
/// bracket is at most 1e-12 wide. Throws RegimeError unless the parameters
/// admit the log-Sobolev inequality.
WSecondMinimum minimize_w_second(const KineticParams& p);

/// sin of the stationary point from the quadratic m s^2 + (lambda - 2) s + m = 0
/// (the root inside [-1, 1]); 0 when m = 0.
double stationary_sine(const KineticParams& p);

/// Transformed equilibrium g(z) = v(sin z) cos z. DomainError unless |z| < pi/2.
double g_density(const KineticParams& p, double z);
double log_g_density(const KineticParams& p, double z);

/// The same density from the tangent half-angle form
///   C cos(z)^(2/lambda - 1) ((1 + tan(z/2)) / (1 - tan(z/2)))^(2m/lambda).
double g_density_explicit(const KineticParams& p, double z);

/// Power of the distance to the boundary governing g near z = +pi/2
/// (upper = true) or z = -pi/2.
double boundary_exponent(const KineticParams& p, bool upper);

/// Cell averages on n uniform cells of (-pi/2, pi/2).
struct ZField {
  std::size_t n = 0;
  std::vector<double> values;

  explicit ZField(std::size_t n_cells);
  double dz() const;
  double interface(std::size_t k) const;
  double center(std::size_t i) const;
  double mass() const;
};

/// Density of z = arcsin y for y ~ f, i.e. f(sin z) cos z, as cell averages on
/// n_z cells. The cumulative distribution is carried over through a monotone
/// cubic interpolant, so the transformed mass equals the original exactly up
/// to rounding. Throws PositivityError unless f > 0 everywhere.
ZField pushforward_density(const DensityField& f, std::size_t n_z);

/// Inverse map back onto `grid`; same construction through y = sin z.
DensityField pullback_density(const ZField& g, const Grid& grid);

}  // namespace opinionfp
