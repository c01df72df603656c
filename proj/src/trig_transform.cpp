#include "opinionfp/trig_transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "opinionfp/errors.hpp"

namespace opinionfp {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_open_interval(double z) {
  if (!(std::abs(z) < kHalfPi)) throw DomainError("z must lie in (-pi/2, pi/2), got " + std::to_string(z));
}

// 1 - sin z and 1 + sin z without cancellation near the ends.
double one_minus_sin(double z) {
  const double s = std::sin(std::numbers::pi / 4.0 - z / 2.0);
  return 2.0 * s * s;
}
double one_plus_sin(double z) {
  const double s = std::sin(std::numbers::pi / 4.0 + z / 2.0);
  return 2.0 * s * s;
}

// Monotone cubic Hermite interpolant of a cumulative distribution given at
// n+1 equally spaced nodes. Slopes come from five-point differences and are
// then limited (Fritsch-Carlson) so the interpolant never decreases.
class MonotoneCdf {
 public:
  MonotoneCdf(double x0, double h, std::vector<double> nodes) : x0_(x0), h_(h), f_(std::move(nodes)) {
    const std::size_t n = f_.size() - 1;
    d_.resize(n + 1);
    const auto& F = f_;
    const double s = 1.0 / (12.0 * h);
    d_[0] = (-25 * F[0] + 48 * F[1] - 36 * F[2] + 16 * F[3] - 3 * F[4]) * s;
    d_[1] = (-3 * F[0] - 10 * F[1] + 18 * F[2] - 6 * F[3] + F[4]) * s;
    for (std::size_t k = 2; k + 2 <= n; ++k) d_[k] = (F[k - 2] - 8 * F[k - 1] + 8 * F[k + 1] - F[k + 2]) * s;
    d_[n - 1] = (3 * F[n] + 10 * F[n - 1] - 18 * F[n - 2] + 6 * F[n - 3] - F[n - 4]) * s;
    d_[n] = (25 * F[n] - 48 * F[n - 1] + 36 * F[n - 2] - 16 * F[n - 3] + 3 * F[n - 4]) * s;

    for (double& d : d_) d = std::max(d, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double secant = (F[k + 1] - F[k]) / h;
      if (secant <= 0.0) {
        d_[k] = d_[k + 1] = 0.0;
        continue;
      }
      const double a = d_[k] / secant;
      const double b = d_[k + 1] / secant;
      const double r2 = a * a + b * b;
      if (r2 > 9.0) {
        const double tau = 3.0 / std::sqrt(r2);
        d_[k] = tau * a * secant;
        d_[k + 1] = tau * b * secant;
      }
    }
  }

  double operator()(double x) const {
    const std::size_t n = f_.size() - 1;
    const double u = (x - x0_) / h_;
    if (u <= 0.0) return f_.front();
    if (u >= static_cast<double>(n)) return f_.back();
    const auto k = std::min(static_cast<std::size_t>(u), n - 1);
    const double t = u - static_cast<double>(k);
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f_[k] + (t3 - 2 * t2 + t) * h_ * d_[k] + (-2 * t3 + 3 * t2) * f_[k + 1] +
           (t3 - t2) * h_ * d_[k + 1];
  }

 private:
  double x0_;
  double h_;
  std::vector<double> f_;
  std::vector<double> d_;
};

std::vector<double> cumulative(const std::vector<double>& cell_values, double h) {
  std::vector<double> out(cell_values.size() + 1, 0.0);
  for (std::size_t i = 0; i < cell_values.size(); ++i) out[i + 1] = out[i] + cell_values[i] * h;
  return out;
}

}  // namespace

double TrigPotential::first(double z) const {
  require_open_interval(z);
  return (params_.half_gap() * std::sin(z) - params_.m()) / std::cos(z);
}

double TrigPotential::second(double z) const {
  require_open_interval(z);
  const double c = params_.half_gap();
  const double m = params_.m();
  const double s = std::sin(z);
  const double cos2 = one_minus_sin(z) * one_plus_sin(z);
  // c - m s split so the part that vanishes at the nearer end cancels
  // analytically against cos^2.
  if (z >= 0.0) return (c - m) / cos2 + m / (1.0 + s);
  return (c + m) / cos2 - m / (1.0 - s);
}

double w_prime(const KineticParams& p, double z) { return TrigPotential(p).first(z); }

double w_second(const KineticParams& p, double z) { return TrigPotential(p).second(z); }

WSecondMinimum minimize_w_second(const KineticParams& p) {
  if (!admits_log_sobolev(p)) {
    throw RegimeError("W'' has no positive minimum for lambda=" + std::to_string(p.lambda()) +
                      ", m=" + std::to_string(p.m()));
  }
  const TrigPotential w(p);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = -kHalfPi + 1e-9;
  double hi = kHalfPi - 1e-9;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = w.second(x1);
  double f2 = w.second(x2);
  while (hi - lo > 1e-12) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = w.second(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = w.second(x2);
    }
  }
  double z = 0.5 * (lo + hi);

  // W'' is flat at its minimum, so compared values only pin z to about
  // sqrt(machine eps). Polish with bisection on the sign of W''' when the
  // minimum is interior.
  const double c = p.half_gap();
  const double m = p.m();
  auto third_sign = [&](double x) {
    const double sx = std::sin(x);
    return -(m * sx * sx - 2.0 * c * sx + m);
  };
  double a = std::max(z - 1e-6, -kHalfPi + 1e-9);
  double b = std::min(z + 1e-6, kHalfPi - 1e-9);
  if (third_sign(a) < 0.0 && third_sign(b) > 0.0) {
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (third_sign(mid) < 0.0 ? a : b) = mid;
    }
    z = 0.5 * (a + b);
  }
  return {z, w.second(z)};
}

double stationary_sine(const KineticParams& p) {
  const double c = p.half_gap();
  const double m = p.m();
  const double disc = c * c - m * m;
  if (disc < 0.0) throw RegimeError("no stationary point: (1 - lambda/2)^2 < m^2");
  // smaller root of m s^2 - 2 c s + m = 0, written without cancellation
  return m / (c + std::sqrt(disc));
}

double log_g_density(const KineticParams& p, double z) {
  require_open_interval(z);
  const BetaEquilibrium eq(p);
  return eq.log_norm_constant() + (eq.exponent_minus() - 1.0) * std::log(one_minus_sin(z)) +
         (eq.exponent_plus() - 1.0) * std::log(one_plus_sin(z)) + std::log(std::cos(z));
}

double g_density(const KineticParams& p, double z) { return std::exp(log_g_density(p, z)); }

double g_density_explicit(const KineticParams& p, double z) {
  require_open_interval(z);
  const double lambda = p.lambda();
  const double t = std::tan(z / 2.0);
  // log((1 + t) / (1 - t)) = 2 atanh(t)
  const double log_g = log_normalization(p) + (2.0 / lambda - 1.0) * std::log(std::cos(z)) +
                       (2.0 * p.m() / lambda) * 2.0 * std::atanh(t);
  return std::exp(log_g);
}

double boundary_exponent(const KineticParams& p, bool upper) {
  const double tilt = 2.0 * p.m() / p.lambda();
  return 2.0 / p.lambda() - 1.0 + (upper ? -tilt : tilt);
}

ZField::ZField(std::size_t n_cells) : n(n_cells), values(n_cells, 0.0) {
  if (n_cells < 4) throw InvalidArgument("z grid needs at least 4 cells");
}

double ZField::dz() const { return std::numbers::pi / static_cast<double>(n); }

double ZField::interface(std::size_t k) const {
  if (k == n) return kHalfPi;
  return -kHalfPi + static_cast<double>(k) * dz();
}

double ZField::center(std::size_t i) const { return -kHalfPi + (static_cast<double>(i) + 0.5) * dz(); }

double ZField::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * dz();
}

ZField pushforward_density(const DensityField& f, std::size_t n_z) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] > 0.0)) throw PositivityError("pushforward needs a strictly positive density; cell " + std::to_string(i));
  }
  const double dy = f.grid.dy();
  const MonotoneCdf cdf(-1.0, dy, cumulative(f.values, dy));
  ZField g(n_z);
  double prev = cdf(-1.0);
  for (std::size_t i = 0; i < n_z; ++i) {
    const double y = (i + 1 == n_z) ? 1.0 : std::clamp(std::sin(g.interface(i + 1)), -1.0, 1.0);
    const double next = cdf(y);
    g.values[i] = (next - prev) / g.dz();
    prev = next;
  }
  return g;
}

DensityField pullback_density(const ZField& g, const Grid& grid) {
  for (std::size_t i = 0; i < g.n; ++i) {
    if (!(g.values[i] > 0.0)) throw PositivityError("pullback needs a strictly positive density; cell " + std::to_string(i));
  }
  const MonotoneCdf cdf(-kHalfPi, g.dz(), cumulative(g.values, g.dz()));
  DensityField f(grid);
  double prev = cdf(-kHalfPi);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = (i + 1 == grid.size()) ? kHalfPi : std::asin(grid.interface(i + 1));
    const double next = cdf(z);
    f[i] = (next - prev) / grid.dy();
    prev = next;
  }
  return f;
}

}  // namespace opinionfp
