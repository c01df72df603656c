#pragma once

#include <string_view>

namespace opinionfp {

/// Parameters of the opinion Fokker-Planck equation.
///
/// `lambda` is the ratio of self-thinking variance to compromise strength and
/// `m` the conserved mean opinion. Construction validates lambda > 0 and
/// -1 < m < 1; the object is immutable afterwards.
class KineticParams {
 public:
  KineticParams(double lambda, double m);

  double lambda() const { return lambda_; }
  double m() const { return m_; }

  /// 1 - lambda/2, the quantity every log-Sobolev condition is phrased in.
  double half_gap() const { return 1.0 - lambda_ / 2.0; }

  friend bool operator==(const KineticParams&, const KineticParams&) = default;

 private:
  double lambda_;
  double m_;
};

/// Ordered from weakest to strongest: every VanishingBoundary pair is also an
/// L2Equilibrium pair.
enum class ParamRegime {
  General,            ///< any lambda > 0, |m| < 1
  L2Equilibrium,      ///< equilibrium is square integrable; log-Sobolev holds
  VanishingBoundary,  ///< 1 - lambda > |m|: equilibrium vanishes at +-1
};

std::string_view to_string(ParamRegime regime);

ParamRegime classify_params(const KineticParams& p);

/// True when classify_params(p) is at least L2Equilibrium.
bool admits_log_sobolev(const KineticParams& p);

/// log C_{m,lambda}, the normalisation of the Beta equilibrium, computed from
/// log-gamma. Throws NumericalError when the exponents overflow.
double log_normalization(const KineticParams& p);

/// Log-Sobolev constant K = (1 - lambda/2 + sqrt((1 - lambda/2)^2 - m^2))^-1.
/// Throws RegimeError outside the L2Equilibrium regime.
double log_sobolev_constant(const KineticParams& p);

/// Minimum of the transformed potential's second derivative; K = 1/(2 rho).
/// Throws RegimeError outside the L2Equilibrium regime.
double bakry_emery_rho(const KineticParams& p);

/// Steady state v(y) = C (1-y)^(a-1) (1+y)^(b-1) with a = (1-m)/lambda and
/// b = (1+m)/lambda. Every evaluation happens in log space.
class BetaEquilibrium {
 public:
  explicit BetaEquilibrium(const KineticParams& p);

  const KineticParams& params() const { return params_; }
  double exponent_minus() const { return a_; }
  double exponent_plus() const { return b_; }
  double log_norm_constant() const { return log_c_; }

  /// log v(y) for |y| < 1; DomainError otherwise.
  double log_value(double y) const;
  double value(double y) const;

  /// Average of log v over the cell [lo, hi] within [-1, 1], exact for the
  /// closed-form density (integrable log singularities at the ends included).
  double log_cell_average(double lo, double hi) const;

  /// First moment of v; equals m.
  double mean() const { return (b_ - a_) / (a_ + b_); }

 private:
  KineticParams params_;
  double a_;
  double b_;
  double log_c_;
};

/// Pointwise value of the equilibrium; DomainError when |y| >= 1.
double equilibrium_value(const BetaEquilibrium& eq, double y);

}  // namespace opinionfp
