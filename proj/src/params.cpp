#include "opinionfp/params.hpp"

#include <cmath>
#include <string>

#include "opinionfp/errors.hpp"

namespace opinionfp {

namespace {

// x log x with the continuous extension 0 log 0 = 0.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Mean of log x over [lo, hi], 0 <= lo <= hi.
double mean_log(double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  if (half == 0.0) return std::log(centre);
  const double q = half / centre;
  if (q > 0.5) {
    return (xlogx(hi) - hi - xlogx(lo) + lo) / (hi - lo);
  }
  // log(centre) - sum_k q^(2k) / (2k (2k+1)); converges like 4^-k.
  const double q2 = q * q;
  double term = q2;
  double correction = 0.0;
  for (int k = 1; k <= 30; ++k) {
    correction += term / (2.0 * k * (2.0 * k + 1.0));
    term *= q2;
    if (term < 1e-18) break;
  }
  return std::log(centre) - correction;
}

}  // namespace

KineticParams::KineticParams(double lambda, double m) : lambda_(lambda), m_(m) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be a finite positive number, got " + std::to_string(lambda));
  }
  if (!(m > -1.0 && m < 1.0)) {
    throw InvalidArgument("m must lie in the open interval (-1, 1), got " + std::to_string(m));
  }
}

std::string_view to_string(ParamRegime regime) {
  switch (regime) {
    case ParamRegime::General:
      return "General";
    case ParamRegime::L2Equilibrium:
      return "L2Equilibrium";
    case ParamRegime::VanishingBoundary:
      return "VanishingBoundary";
  }
  return "?";
}

ParamRegime classify_params(const KineticParams& p) {
  const double abs_m = std::abs(p.m());
  if (1.0 - p.lambda() > abs_m) return ParamRegime::VanishingBoundary;
  const double c = p.half_gap();
  // m == 0 is its own branch: the strict inequality is required there.
  const bool l2 = p.m() == 0.0 ? c > 0.0 : c >= abs_m;
  return l2 ? ParamRegime::L2Equilibrium : ParamRegime::General;
}

bool admits_log_sobolev(const KineticParams& p) {
  return classify_params(p) != ParamRegime::General;
}

double log_normalization(const KineticParams& p) {
  const double a = (1.0 - p.m()) / p.lambda();
  const double b = (1.0 + p.m()) / p.lambda();
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double log_c = -((a + b - 1.0) * std::log(2.0) + log_beta);
  if (!std::isfinite(log_c)) {
    throw NumericalError("Beta normalisation overflows for lambda=" + std::to_string(p.lambda()) +
                         ", m=" + std::to_string(p.m()));
  }
  return log_c;
}

namespace {

void require_log_sobolev(const KineticParams& p, const char* what) {
  if (!admits_log_sobolev(p)) {
    throw RegimeError(std::string(what) + " requires 1 - lambda/2 >= |m| (strict when m = 0); got lambda=" +
                      std::to_string(p.lambda()) + ", m=" + std::to_string(p.m()));
  }
}

// (1 - lambda/2 + sqrt((1 - lambda/2)^2 - m^2)); the radicand is clamped at the
// equality case 1 - lambda/2 = |m|.
double twice_rho(const KineticParams& p) {
  const double c = p.half_gap();
  const double radicand = (c - p.m()) * (c + p.m());
  return c + std::sqrt(radicand > 0.0 ? radicand : 0.0);
}

}  // namespace

double log_sobolev_constant(const KineticParams& p) {
  require_log_sobolev(p, "log_sobolev_constant");
  return 1.0 / twice_rho(p);
}

double bakry_emery_rho(const KineticParams& p) {
  require_log_sobolev(p, "bakry_emery_rho");
  if (p.m() == 0.0) return p.half_gap();
  return 0.5 * twice_rho(p);
}

BetaEquilibrium::BetaEquilibrium(const KineticParams& p)
    : params_(p),
      a_((1.0 - p.m()) / p.lambda()),
      b_((1.0 + p.m()) / p.lambda()),
      log_c_(log_normalization(p)) {}

double BetaEquilibrium::log_value(double y) const {
  if (!(std::abs(y) < 1.0)) {
    throw DomainError("equilibrium is evaluated on the open interval (-1, 1), got y=" + std::to_string(y));
  }
  return log_c_ + (a_ - 1.0) * std::log1p(-y) + (b_ - 1.0) * std::log1p(y);
}

double BetaEquilibrium::value(double y) const { return std::exp(log_value(y)); }

double BetaEquilibrium::log_cell_average(double lo, double hi) const {
  if (!(lo >= -1.0 && hi <= 1.0 && lo < hi)) {
    throw DomainError("cell [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is not inside [-1, 1]");
  }
  return log_c_ + (a_ - 1.0) * mean_log(1.0 - hi, 1.0 - lo) + (b_ - 1.0) * mean_log(1.0 + lo, 1.0 + hi);
}

double equilibrium_value(const BetaEquilibrium& eq, double y) { return eq.value(y); }

}  // namespace opinionfp
