#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "opinionfp/errors.hpp"
#include "opinionfp/functionals.hpp"

using namespace opinionfp;

namespace {

DensityField uniform(const Grid& g) { return DensityField(g, std::vector<double>(g.size(), 0.5)); }

// Discrete phi ~ v exp(y/2) with v the cell-averaged Beta field.
DensityField tilted(const KineticParams& p, const Grid& g) {
  DensityField phi = equilibrium_field(BetaEquilibrium(p), g);
  for (std::size_t i = 0; i < g.size(); ++i) phi[i] *= std::exp(g.center(i) / 2.0);
  phi.normalize();
  return phi;
}

DensityField random_density(const Grid& g, std::mt19937_64& rng, bool allow_zeros) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DensityField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    f[i] = u(rng);
    if (allow_zeros && u(rng) < 0.1) f[i] = 0.0;
  }
  if (f.mass() == 0.0) f[0] = 1.0;
  f.normalize();
  return f;
}

double observed_order(const std::vector<double>& values) {
  // values at n, 2n, 4n, ...: fit log2 of successive differences
  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) diffs.push_back(std::abs(values[i + 1] - values[i]));
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i) sum += std::log2(diffs[i] / diffs[i + 1]);
  return sum / static_cast<double>(diffs.size() - 1);
}

}  // namespace

TEST_CASE("grid construction") {
  const Grid g4 = build_grid(4);
  CHECK(g4.dy() == 0.5);
  CHECK(g4.center(0) == -0.75);
  CHECK(g4.center(1) == -0.25);
  CHECK(g4.center(2) == 0.25);
  CHECK(g4.center(3) == 0.75);
  const Grid g200(200);
  CHECK(g200.dy() == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(g200.center(0) == doctest::Approx(-0.995).epsilon(1e-15));
  CHECK(g200.interface(0) == -1.0);
  CHECK(g200.interface(200) == 1.0);
  CHECK_THROWS_AS(Grid(3), InvalidArgument);
  for (std::size_t i = 0; i + 1 < g200.size(); ++i) {
    CHECK(g200.center(i + 1) - g200.center(i) == doctest::Approx(g200.dy()).epsilon(1e-12));
  }
}

TEST_CASE("relative entropy") {
  const Grid g(400);
  const DensityField v = equilibrium_field(BetaEquilibrium(KineticParams(0.5, 0.0)), g);
  CHECK(relative_entropy(v, v) == 0.0);
  CHECK(std::abs(relative_entropy(uniform(g), v) - 0.20824053077194499919) <= 1e-4);

  DensityField hole = uniform(g);
  hole[10] = 0.0;
  CHECK_THROWS_AS(relative_entropy(uniform(g), hole), AbsoluteContinuityError);
  CHECK_NOTHROW(relative_entropy(hole, uniform(g)));
  CHECK_THROWS_AS(relative_entropy(uniform(Grid(10)), uniform(g)), GridMismatch);
}

TEST_CASE("functionals of a tilted equilibrium match the continuum values") {
  const KineticParams p(0.5, 0.0);
  const Grid g(400);
  const DensityField phi = tilted(p, g);
  const BetaEquilibrium eq(p);
  const DensityField v = equilibrium_field(eq, g);
  CHECK(std::abs(relative_entropy(phi, v) - 0.02473540854341406622) <= 1e-4);
  CHECK(weighted_fisher(phi, eq, p.lambda()) == doctest::Approx(0.049646778303844882226).epsilon(1e-3));
  CHECK(std::abs(weighted_l2(phi, eq) - 0.049999354226905441542) <= 1e-4);
}

TEST_CASE("functionals converge under refinement") {
  const KineticParams p(0.5, 0.0);
  const BetaEquilibrium eq(p);
  std::vector<double> h, fisher, l2;
  for (std::size_t n : {100, 200, 400, 800}) {
    const Grid g(n);
    const DensityField phi = tilted(p, g);
    const DensityField v = equilibrium_field(eq, g);
    h.push_back(relative_entropy(phi, v));
    fisher.push_back(weighted_fisher(phi, v, p.lambda()));
    l2.push_back(weighted_l2(phi, v));
  }
  CHECK(observed_order(h) >= 0.9);
  CHECK(observed_order(fisher) >= 0.9);
  CHECK(observed_order(l2) >= 0.9);
}

TEST_CASE("weighted Fisher information") {
  const KineticParams p(0.7, -0.2);
  const Grid g(300);
  const BetaEquilibrium eq(p);
  const DensityField v = equilibrium_field(eq, g);
  CHECK(weighted_fisher(v, eq, p.lambda()) <= 1e-20);
  const DensityField phi = tilted(p, g);
  CHECK(weighted_fisher(phi, eq, 2.0 * p.lambda()) == 2.0 * weighted_fisher(phi, eq, p.lambda()));
  CHECK(weighted_fisher(phi, v, p.lambda()) == doctest::Approx(weighted_fisher(phi, eq, p.lambda())).epsilon(1e-12));
  DensityField bad = phi;
  bad[3] = 0.0;
  CHECK_THROWS_AS(weighted_fisher(bad, eq, p.lambda()), PositivityError);
  CHECK_THROWS_AS(log_ratio(bad, v), PositivityError);
}

TEST_CASE("weighted L2 and L1") {
  const Grid g(128);
  const DensityField v = equilibrium_field(BetaEquilibrium(KineticParams(0.4, 0.1)), g);
  CHECK(weighted_l2(v, v) == 0.0);
  CHECK(l1_distance(v, v) == 0.0);

  DensityField left(g), right(g);
  for (std::size_t i = 0; i < g.size() / 2; ++i) left[i] = 1.0;
  for (std::size_t i = g.size() / 2; i < g.size(); ++i) right[i] = 1.0;
  CHECK(l1_distance(left, right) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(weighted_l2(left, right) == std::numeric_limits<double>::infinity());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityField f = random_density(g, rng, false);
    const DensityField h = random_density(g, rng, true);
    double brute = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) brute += std::abs(f[i] - h[i]) * g.dy();
    CHECK(l1_distance(f, h) == doctest::Approx(brute).epsilon(1e-14));
    const double l1 = l1_distance(f, v);
    CHECK(l1 * l1 <= weighted_l2(f, v) * (1.0 + 1e-12));
    CHECK(weighted_l2(f, v) >= 0.0);
    CHECK(relative_entropy(h, f) >= -1e-12);
  }
}

TEST_CASE("Csiszar-Kullback-Pinsker slack") {
  const Grid g(64);
  std::mt19937_64 rng(11);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityField f = random_density(g, rng, true);
    const DensityField h = random_density(g, rng, false);
    worst = std::min(worst, ckp_slack(f, h));
  }
  CHECK(worst >= -1e-10);
  const DensityField u = uniform(g);
  CHECK(ckp_slack(u, u) == 0.0);
  DensityField left(g), right(g);
  left[0] = 1.0 / g.dy();
  right[g.size() - 1] = 1.0 / g.dy();
  CHECK(ckp_slack(left, right) == std::numeric_limits<double>::infinity());
}

TEST_CASE("weighted log-Sobolev slack") {
  const Grid g(400);
  const KineticParams p(0.5, 0.0);
  const DensityField v = equilibrium_field(BetaEquilibrium(p), g);
  CHECK(std::abs(ls_slack(v, p)) <= 1e-14);

  DensityField bimodal(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double y = g.center(i);
    bimodal[i] = std::exp(-0.5 * std::pow((y - 0.5) / 0.15, 2)) + std::exp(-0.5 * std::pow((y + 0.5) / 0.15, 2));
  }
  bimodal.normalize();
  CHECK(ls_slack(bimodal, p) > 0.0);

  const KineticParams q(1.0, 0.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 200; ++trial) {
    DensityField phi(g);
    double c[5];
    for (double& x : c) x = normal(rng);
    for (std::size_t i = 0; i < g.size(); ++i) {
      double h = 0.0;
      for (int k = 0; k < 5; ++k) h += c[k] * std::cos((k + 1) * std::acos(g.center(i))) / (k + 1);
      phi[i] = std::exp(h);
    }
    phi.normalize();
    worst = std::min(worst, ls_slack(phi, q));
  }
  CHECK(worst >= -1e-6);

  CHECK_THROWS_AS(ls_slack(v, KineticParams(1.9, 0.5)), RegimeError);
  DensityField bad = v;
  bad[0] = 0.0;
  CHECK_THROWS_AS(ls_slack(bad, p), PositivityError);
}

TEST_CASE("uniform log-Sobolev slack") {
  const Grid g(400);
  CHECK(std::abs(uniform_ls_slack(g, std::vector<double>(g.size(), 1.0 / std::sqrt(2.0)))) <= 1e-14);

  std::vector<double> w(g.size());
  const double norm = std::sqrt(8.0 / 3.0);
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = (1.0 + g.center(i)) / norm;
  const double slack = uniform_ls_slack(g, w);
  CHECK(slack > 0.0);
  CHECK(slack == doctest::Approx(0.56805437799855697527).epsilon(1e-3));

  std::vector<double> doubled = w;
  for (double& x : doubled) x *= 2.0;
  CHECK(uniform_ls_slack(g, doubled) == doctest::Approx(4.0 * slack).epsilon(1e-12));

  CHECK_THROWS_AS(uniform_ls_slack(g, std::vector<double>(g.size(), 0.0)), InvalidArgument);
  CHECK_THROWS_AS(uniform_ls_slack(g, std::vector<double>(10, 1.0)), GridMismatch);
}
