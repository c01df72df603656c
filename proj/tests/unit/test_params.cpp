#include <doctest.h>

#include <cmath>
#include <numbers>

#include "opinionfp/errors.hpp"
#include "opinionfp/params.hpp"
#include "quadrature.hpp"

using namespace opinionfp;

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(KineticParams(0.5, 0.0));
  CHECK_THROWS_AS(KineticParams(0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(KineticParams(-1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(KineticParams(0.5, 1.0), InvalidArgument);
  CHECK_THROWS_AS(KineticParams(0.5, -1.0), InvalidArgument);
  CHECK_THROWS_AS(KineticParams(std::nan(""), 0.0), InvalidArgument);
}

TEST_CASE("regime classification") {
  CHECK(classify_params(KineticParams(1.0, 0.0)) == ParamRegime::L2Equilibrium);
  CHECK(classify_params(KineticParams(0.5, 0.2)) == ParamRegime::VanishingBoundary);
  CHECK(classify_params(KineticParams(1.9, 0.5)) == ParamRegime::General);
  // equality admitted only away from m = 0
  CHECK(classify_params(KineticParams(1.0, 0.5)) == ParamRegime::L2Equilibrium);
  CHECK(classify_params(KineticParams(2.0, 0.0)) == ParamRegime::General);
  CHECK(to_string(ParamRegime::VanishingBoundary) == "VanishingBoundary");

  // VanishingBoundary implies log-Sobolev admissibility
  for (double lambda = 0.05; lambda < 3.0; lambda += 0.05) {
    for (double m = -0.95; m < 0.96; m += 0.05) {
      const KineticParams p(lambda, m);
      if (classify_params(p) == ParamRegime::VanishingBoundary) CHECK(admits_log_sobolev(p));
    }
  }
}

TEST_CASE("log normalisation against frozen high-precision values") {
  struct Case {
    double lambda, m, log_c;
  };
  const Case cases[] = {
      {1.0, 0.0, -0.69314718055994530942}, {2.0, 0.0, -1.1447298858494001741},
      {0.5, 0.5, -0.98082925301172623686}, {0.5, 0.0, -0.28768207245178092744},
      {0.3, -0.4, -0.65278792683776818265}, {1.5, 0.2, -1.0058574244205498105},
  };
  for (const Case& c : cases) {
    CAPTURE(c.lambda);
    CAPTURE(c.m);
    const double got = log_normalization(KineticParams(c.lambda, c.m));
    CHECK(std::abs(got - c.log_c) <= 1e-10 * std::abs(c.log_c));
  }
  CHECK(std::exp(log_normalization(KineticParams(2.0, 0.0))) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("log normalisation overflow is reported") {
  CHECK_THROWS_AS(log_normalization(KineticParams(1e-310, 0.0)), NumericalError);
}

TEST_CASE("equilibrium values") {
  const BetaEquilibrium uniform(KineticParams(1.0, 0.0));
  CHECK(equilibrium_value(uniform, 0.3) == doctest::Approx(0.5).epsilon(1e-15));
  const BetaEquilibrium arcsine(KineticParams(2.0, 0.0));
  CHECK(arcsine.value(0.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
  CHECK_THROWS_AS(uniform.value(1.0), DomainError);
  CHECK_THROWS_AS(uniform.value(-1.0), DomainError);
  CHECK(uniform.exponent_minus() == 1.0);
  CHECK(uniform.exponent_plus() == 1.0);
}

TEST_CASE("equilibrium mirror symmetry in log space") {
  for (double m : {-0.7, -0.2, 0.3, 0.6}) {
    const BetaEquilibrium plus(KineticParams(0.7, m));
    const BetaEquilibrium minus(KineticParams(0.7, -m));
    for (double y : {-0.99, -0.5, 0.0, 0.25, 0.9}) CHECK(plus.log_value(y) == doctest::Approx(minus.log_value(-y)).epsilon(1e-14));
  }
}

TEST_CASE("equilibrium has unit mass and mean m (quadrature oracle)") {
  const double lambdas[] = {0.1, 0.3, 0.5, 1.0, 1.5, 2.5, 4.0};
  const double ms[] = {-0.8, -0.3, 0.0, 0.4, 0.9};
  for (double lambda : lambdas) {
    for (double m : ms) {
      const KineticParams p(lambda, m);
      CAPTURE(lambda);
      CAPTURE(m);
      // quadrature cannot see mass closer to an end than ~1e-300; that tail is about (1e-300)^a / a
      const double a = std::min(1.0 - m, 1.0 + m) / lambda;
      if (std::pow(1e-300, a) / a < 1e-10) {
        CHECK(std::abs(oracle::beta_moment(p, [](double) { return 1.0; }) - 1.0) <= 1e-8);
        CHECK(std::abs(oracle::beta_moment(p, [](double y) { return y; }) - m) <= 1e-8);
      }
      CHECK(BetaEquilibrium(p).mean() == doctest::Approx(m).epsilon(1e-14).scale(1.0));
    }
  }
}

TEST_CASE("cell average of log v is exact") {
  for (const KineticParams& p : {KineticParams(0.5, 0.2), KineticParams(1.7, -0.3), KineticParams(0.2, 0.0)}) {
    const BetaEquilibrium eq(p);
    for (auto [lo, hi] : {std::pair{-1.0, -0.99}, std::pair{-0.3, -0.1}, std::pair{0.98, 1.0}, std::pair{0.2, 0.2001}}) {
      const double ref = oracle::integrate([&](double y) { return eq.log_value(y); }, lo, hi) / (hi - lo);
      CHECK(eq.log_cell_average(lo, hi) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(BetaEquilibrium(KineticParams(0.5, 0.0)).log_cell_average(0.5, 1.5), DomainError);
}

TEST_CASE("log-Sobolev constant and Bakry-Emery rho") {
  CHECK(log_sobolev_constant(KineticParams(1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(log_sobolev_constant(KineticParams(0.5, 0.0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(log_sobolev_constant(KineticParams(1.9, 0.5)), RegimeError);
  CHECK_THROWS_AS(bakry_emery_rho(KineticParams(2.0, 0.0)), RegimeError);
  CHECK(bakry_emery_rho(KineticParams(1.0, 0.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(bakry_emery_rho(KineticParams(0.5, 0.25)) - 0.7285533905932737622) <= 1e-15);
  // equality case: the square root vanishes
  CHECK(log_sobolev_constant(KineticParams(1.0, 0.5)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("K times 2 rho is one, rho is at most one and decreases in lambda") {
  for (double m : {0.0, 0.1, -0.3, 0.5}) {
    double previous = 2.0;
    for (double lambda = 0.02; lambda < 2.0; lambda += 0.02) {
      const KineticParams p(lambda, m);
      if (!admits_log_sobolev(p)) break;
      const double rho = bakry_emery_rho(p);
      CHECK(std::abs(log_sobolev_constant(p) * 2.0 * rho - 1.0) <= 1e-15);
      CHECK(rho <= 1.0);
      CHECK(rho > 0.0);
      CHECK(rho < previous);
      previous = rho;
    }
  }
}
