// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every tolerance lives in the constants below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "opinionfp/boltzmann_mc.hpp"
#include "opinionfp/fp_solver.hpp"
#include "opinionfp/functionals.hpp"
#include "opinionfp/harness/battery.hpp"
#include "opinionfp/harness/fit.hpp"
#include "opinionfp/harness/initial.hpp"
#include "opinionfp/harness/runs.hpp"
#include "opinionfp/params.hpp"
#include "opinionfp/trig_transform.hpp"

using namespace opinionfp;
using namespace opinionfp::harness;

namespace {

// 1
constexpr double kRhoTol = 1e-10;
constexpr double kKRhoTol = 1e-12;
constexpr std::size_t kMinAdmissiblePoints = 100;
// 2
constexpr double kSteadyDriftTol = 1e-10;
constexpr double kBetaL1Tol = 2e-3;
constexpr double kMinOrder = 1.0;
constexpr double kOrderSlack = 0.05;  // log2 ratios of a first-order error wobble a little
// 3
constexpr double kMassPerStepTol = 1e-12;
// 4 and 5
constexpr double kRate = 0.95;
constexpr double kMonotoneTol = 1e-12;
// 6
constexpr double kCkpTol = -1e-10;
constexpr double kLsTol = -1e-6;
constexpr std::size_t kCkpPairs = 1000;
constexpr std::size_t kLsSamples = 200;
constexpr std::size_t kLsCells = 400;
// 7
constexpr double kMcL1Tol = 0.05;
constexpr std::size_t kMcAgents = 100000;
constexpr double kMcEpsilon = 0.01;
constexpr std::size_t kMcSeeds = 50;
constexpr double kStandardErrors = 3.0;
constexpr std::size_t kHistCells = 50;
// 9
constexpr double kIdentityOrder = 0.9;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// least-squares slope of log err against log h
double observed_order(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<KineticParams> admissible_points() {
  std::vector<KineticParams> pts;
  for (int i = 1; i <= 19; ++i) {
    const double lambda = 0.1 * i;
    const double c = std::min(1.0 - lambda / 2.0, 0.95);
    for (int j = -3; j <= 3; ++j) pts.emplace_back(lambda, c * j / 3.0);
  }
  return pts;
}

Outcome criterion1() {
  double worst_rho = 0.0, worst_k = 0.0;
  std::size_t count = 0;
  for (const KineticParams& p : admissible_points()) {
    if (!admits_log_sobolev(p)) continue;
    ++count;
    const double rho = bakry_emery_rho(p);
    worst_rho = std::max(worst_rho, std::abs(minimize_w_second(p).min_value - rho));
    worst_k = std::max(worst_k, std::abs(log_sobolev_constant(p) * 2.0 * rho - 1.0));
  }
  return {count >= kMinAdmissiblePoints && worst_rho <= kRhoTol && worst_k <= kKRhoTol,
          std::to_string(count) + " points, max|min W''-rho| " + fmt("%.2e", worst_rho) + ", max|2K rho-1| " +
              fmt("%.2e", worst_k)};
}

// the 10^4-step steady runs double as the per-step mass check of criterion 3
double g_worst_mass_step = 0.0;

void track_mass(const DensityField& before, const DensityField& after) {
  g_worst_mass_step = std::max(g_worst_mass_step, std::abs(after.mass() - before.mass()));
}

Outcome criterion2() {
  constexpr double dt = 1e-3;
  constexpr int steps = 10000;
  double worst_drift = 0.0;
  for (const KineticParams& p : {KineticParams(0.5, 0.0), KineticParams(0.3, -0.4), KineticParams(1.0, 0.0),
                                 KineticParams(1.2, 0.3)}) {
    const Grid g(200);
    const DensityField v0 = discretize_equilibrium(p, g);
    DensityField v = v0;
    const ImplicitStepper stepper(p, g, dt);
    for (int k = 0; k < steps; ++k) {
      const DensityField before = v;
      stepper.step(v.values);
      track_mass(before, v);
    }
    for (std::size_t i = 0; i < g.size(); ++i) worst_drift = std::max(worst_drift, std::abs(v[i] - v0[i]));
  }

  const KineticParams p(0.5, 0.0);
  const BetaEquilibrium eq(p);
  std::vector<double> h, err;
  double l1_200 = 0.0;
  for (std::size_t n : {100, 200, 400, 800}) {
    const Grid g(n);
    const double l1 = l1_distance(discretize_equilibrium(p, g), sampled_equilibrium(eq, g));
    if (n == 200) l1_200 = l1;
    h.push_back(g.dy());
    err.push_back(l1);
  }
  const double order = observed_order(h, err);
  return {worst_drift <= kSteadyDriftTol && l1_200 <= kBetaL1Tol && order >= kMinOrder - kOrderSlack,
          "max drift " + fmt("%.2e", worst_drift) + ", L1 vs Beta at n=200 " + fmt("%.2e", l1_200) + ", order " +
              fmt("%.3f", order)};
}

DensityField skewed_initial(const Grid& g) {
  DensityField f = bimodal_density(g, 0.15);
  for (std::size_t i = 0; i < g.size(); ++i) f[i] *= 1.0 + 0.6 * g.center(i);
  f.normalize();
  return f;
}

Outcome criterion3() {
  // m is set to the discrete initial mean, so the continuous mean would stay put;
  // whatever the discrete mean does is scheme error.
  constexpr double dt = 1e-3;
  constexpr double t_end = 1.0;
  std::vector<double> h, drift;
  for (std::size_t n : {50, 100, 200, 400}) {
    const Grid g(n);
    const DensityField f0 = skewed_initial(g);
    const KineticParams p(0.5, f0.mean());
    const ImplicitStepper stepper(p, g, dt);
    DensityField f = f0;
    for (int k = 0; k < static_cast<int>(std::lround(t_end / dt)); ++k) {
      const DensityField before = f;
      stepper.step(f.values);
      track_mass(before, f);
    }
    h.push_back(g.dy());
    drift.push_back(std::abs(f.mean() - f0.mean()) / t_end);
  }
  const bool exact = *std::max_element(drift.begin(), drift.end()) <= 1e-13;
  const double order = exact ? std::numeric_limits<double>::infinity() : observed_order(h, drift);
  std::string detail = "max mass change per step " + fmt("%.2e", g_worst_mass_step) + ", mean drift per unit time";
  for (double d : drift) detail += " " + fmt("%.2e", d);
  detail += ", order " + fmt("%.3f", order);
  return {g_worst_mass_step <= kMassPerStepTol && order >= kMinOrder - kOrderSlack, detail};
}

struct DecayRun {
  KineticParams p;
  Trajectory traj;
};

std::vector<DecayRun> g_decay_runs;

void ensure_decay_runs() {
  if (!g_decay_runs.empty()) return;
  const Grid g(200);
  const DensityField v0 = bimodal_density(g, 0.15);
  for (const KineticParams& p : {KineticParams(0.2, 0.0), KineticParams(0.4, 0.0), KineticParams(0.6, 0.0),
                                 KineticParams(0.8, 0.0), KineticParams(0.5, 0.2)}) {
    g_decay_runs.push_back({p, solve(p, v0, 1e-3, 10.0, 1)});
  }
}

std::vector<double> column(const Trajectory& t, double TrajectoryRow::*field) {
  std::vector<double> out;
  for (const TrajectoryRow& r : t.rows) out.push_back(r.*field);
  return out;
}

Outcome criterion4() {
  ensure_decay_runs();
  bool ok = true;
  std::string detail;
  for (const DecayRun& run : g_decay_runs) {
    if (run.p.m() != 0.0) continue;
    const std::vector<double> t = column(run.traj, &TrajectoryRow::t);
    const std::vector<double> h = column(run.traj, &TrajectoryRow::entropy);
    double worst_rise = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < h.size(); ++k) worst_rise = std::max(worst_rise, h[k] - h[k - 1]);
    const double slope = fit_second_half(t, h).slope;
    const double bound = -(2.0 - run.p.lambda()) * kRate;
    ok = ok && worst_rise <= kMonotoneTol && slope <= bound;
    detail += "lambda " + fmt("%.1f", run.p.lambda()) + ": slope " + fmt("%.3f", slope) + " (bound " +
              fmt("%.3f", bound) + "), max rise " + fmt("%.1e", worst_rise) + "; ";
  }
  return {ok, detail};
}

Outcome criterion5() {
  ensure_decay_runs();
  bool ok = true;
  std::string detail;
  for (const DecayRun& run : g_decay_runs) {
    const double slope =
        fit_second_half(column(run.traj, &TrajectoryRow::t), column(run.traj, &TrajectoryRow::weighted_l2)).slope;
    ok = ok && slope <= -2.0 * kRate;
    detail += "(" + fmt("%.1f", run.p.lambda()) + "," + fmt("%.1f", run.p.m()) + ") " + fmt("%.3f", slope) + "; ";
  }
  return {ok, detail + "bound " + fmt("%.3f", -2.0 * kRate)};
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  const Grid g(200);
  double worst_ckp = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < kCkpPairs; ++k) {
    const DensityField f = random_mixture_density(g, rng);
    const DensityField h = random_mixture_density(g, rng);
    worst_ckp = std::min(worst_ckp, ckp_slack(f, h));
  }

  double worst_ls = std::numeric_limits<double>::infinity();
  double worst_uniform = std::numeric_limits<double>::infinity();
  std::size_t points = 0;
  for (int i = 1; i <= 9; ++i) {
    const double lambda = 0.2 * i;
    for (double m : default_m_values(lambda)) {
      const LsPointReport r = verify_ls_point(KineticParams(lambda, m), kLsCells, kLsSamples, 100 + points);
      worst_ls = std::min(worst_ls, r.min_ls_slack);
      if (!std::isnan(r.min_uniform_slack)) worst_uniform = std::min(worst_uniform, r.min_uniform_slack);
      ++points;
    }
  }
  const bool uniform_seen = std::isfinite(worst_uniform);
  return {worst_ckp >= kCkpTol && worst_ls >= kLsTol && uniform_seen && worst_uniform >= kLsTol,
          "min ckp slack " + fmt("%.2e", worst_ckp) + " over " + std::to_string(kCkpPairs) + " pairs, min ls slack " +
              fmt("%.2e", worst_ls) + " over " + std::to_string(points) + " points, min uniform slack " +
              fmt("%.2e", worst_uniform)};
}

DensityField fp_reference(const KineticParams& p, double t, const Grid& coarse) {
  const Grid fine(200);
  const long steps = std::lround(t / 1e-3);
  const ImplicitStepper stepper(p, fine, t / static_cast<double>(steps));
  DensityField v = bimodal_density(fine, 0.15);
  for (long k = 0; k < steps; ++k) stepper.step(v.values);
  return remap_density(v, coarse);
}

Outcome criterion7() {
  const KineticParams p(0.5, 0.0);
  const Grid fine(200);
  const Grid coarse(kHistCells);
  const DensityField v0 = bimodal_density(fine, 0.15);
  constexpr double t_fp = 2.0;

  // micro-macro agreement
  const InteractionParams base(0.5, 0.25, kMcEpsilon);
  Ensemble e = sample_ensemble(v0, kMcAgents, 1);
  const QuasiInvariantResult r = quasi_invariant_run(e, base, t_fp, coarse);
  const double t_actual = static_cast<double>(r.sweeps) * base.fp_time_per_sweep();
  const double l1 = l1_distance(r.histogram, fp_reference(p, t_actual, coarse));

  // mean drift across seeds
  std::vector<double> drifts;
  for (std::size_t s = 0; s < kMcSeeds; ++s) {
    Ensemble es = sample_ensemble(v0, kMcAgents, 1000 + s);
    const double m0 = moments(es).mean;
    quasi_invariant_run(es, base, t_fp, coarse);
    drifts.push_back(moments(es).mean - m0);
  }
  double avg = 0.0;
  for (double d : drifts) avg += d;
  avg /= static_cast<double>(drifts.size());
  double var = 0.0;
  for (double d : drifts) var += (d - avg) * (d - avg);
  const double se = std::sqrt(var / static_cast<double>(drifts.size() - 1)) / std::sqrt(double(drifts.size()));

  // same lambda, halved (gamma, sigma^2)
  const InteractionParams half(0.25, 0.125, kMcEpsilon);
  Ensemble eh = sample_ensemble(v0, kMcAgents, 2);
  const QuasiInvariantResult rh = quasi_invariant_run(eh, half, t_fp, coarse);
  const double l1_scaling = l1_distance(r.histogram, rh.histogram);
  // two independent histograms: E|count difference| / N ~ sqrt(2/pi) sqrt(2 p / N) per cell
  double expected = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const double prob = 0.5 * (r.histogram[i] + rh.histogram[i]) * coarse.dy();
    expected += std::sqrt(2.0 / M_PI) * std::sqrt(2.0 * prob / static_cast<double>(kMcAgents));
  }
  const double budget = kStandardErrors * expected;

  return {l1 <= kMcL1Tol && std::abs(avg) <= kStandardErrors * se && l1_scaling <= budget,
          "L1 vs FP at t=" + fmt("%.3f", t_actual) + " " + fmt("%.4f", l1) + ", mean drift " + fmt("%.2e", avg) +
              " (3 se " + fmt("%.2e", kStandardErrors * se) + "), L1 between (0.5,0.25) and (0.25,0.125) " +
              fmt("%.4f", l1_scaling) + " (budget " + fmt("%.4f", budget) + ")"};
}

Outcome criterion8() {
  bool ok = true;
  std::string failed;
  const DensityField smooth = bimodal_density(Grid(400), 0.15);
  std::size_t count = 0;
  for (const KineticParams& p : {KineticParams(0.5, 0.0), KineticParams(0.3, -0.4), KineticParams(1.0, 0.0),
                                 KineticParams(1.5, 0.2), KineticParams(0.8, 0.5), KineticParams(2.5, -0.6)}) {
    for (const Check& c : transform_checks(check_transform(p, smooth))) {
      ++count;
      if (!c.passed) {
        ok = false;
        failed += " " + c.name + "@(" + fmt("%g", p.lambda()) + "," + fmt("%g", p.m()) + ")";
      }
    }
  }
  return {ok, std::to_string(count) + " transform checks over 6 parameter pairs" +
                  (failed.empty() ? std::string() : ", failed:" + failed)};
}

Outcome criterion9() {
  // smooth data: the equilibrium tilted by a bump, so the log ratio is smooth up to the ends
  const KineticParams p(0.5, 0.0);
  const BetaEquilibrium eq(p);
  constexpr double t0 = 0.1;
  constexpr double t1 = 0.5;
  std::vector<double> h, err;
  for (std::size_t n : {50, 100, 200, 400}) {
    const Grid g(n);
    const double dt = 0.02 * 50.0 / static_cast<double>(n);
    DensityField v0 = sampled_equilibrium(eq, g);
    for (std::size_t i = 0; i < n; ++i) v0[i] *= std::exp(0.8 * g.center(i) + 0.5 * std::cos(3.0 * g.center(i)));
    v0.normalize();
    const Trajectory traj = solve(p, v0, dt, t1, 1);
    double worst = 0.0;
    for (std::size_t k = 1; k < traj.rows.size(); ++k) {
      if (traj.rows[k].t < t0) continue;
      const double rate = (traj.rows[k].entropy - traj.rows[k - 1].entropy) / dt;
      worst = std::max(worst, std::abs(rate + traj.rows[k].fisher));
    }
    h.push_back(g.dy());
    err.push_back(worst);
  }
  const double order = observed_order(h, err);
  std::string detail = "max |dH/dt + I|";
  for (double e : err) detail += " " + fmt("%.2e", e);
  return {order >= kIdentityOrder, detail + ", order " + fmt("%.3f", order)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3,
                                                          criterion4, criterion5, criterion6,
                                                          criterion7, criterion8, criterion9};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = criteria[i]();
    } catch (const std::exception& ex) {
      o = {false, std::string("threw: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s [%.2f s]\n", o.passed ? "PASS" : "FAIL", i + 1, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
