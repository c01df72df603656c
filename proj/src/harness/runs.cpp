#include "opinionfp/harness/runs.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "opinionfp/boltzmann_mc.hpp"
#include "opinionfp/fp_solver.hpp"
#include "opinionfp/functionals.hpp"
#include "opinionfp/harness/battery.hpp"
#include "opinionfp/harness/initial.hpp"
#include "opinionfp/rng.hpp"

namespace opinionfp::harness {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMcL1Tolerance = 0.05;

fs::path ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::string verdict_lines(const std::vector<Check>& checks) {
  std::string s;
  for (const Check& c : checks) s += (c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail + "\n";
  return s;
}

std::string regime_line(const KineticParams& p) {
  std::ostringstream os;
  os << "lambda = " << format_real(p.lambda()) << "\nm = " << format_real(p.m())
     << "\nregime = " << to_string(classify_params(p)) << "\n";
  if (admits_log_sobolev(p)) {
    os << "K = " << format_real(log_sobolev_constant(p)) << "\nrho = " << format_real(bakry_emery_rho(p)) << "\n";
  } else {
    os << "K = n/a\nrho = n/a\n";
  }
  return os.str();
}

std::string fit_line(const char* name, const std::optional<DecayFit>& fit) {
  if (!fit) return std::string(name) + " = n/a\n";
  std::ostringstream os;
  os << name << " = " << format_real(fit->slope) << "\n"
     << name << "_window = [" << format_real(fit->t0) << ", " << format_real(fit->t1) << "]\n"
     << name << "_samples = " << fit->samples << "\n"
     << name << "_r2 = " << format_real(fit->r2) << "\n"
     << name << "_max_residual = " << format_real(fit->max_residual) << "\n";
  return os.str();
}

void write_equilibrium_csv(const fs::path& path, const KineticParams& p, const Grid& grid) {
  const BetaEquilibrium eq(p);
  const DensityField kernel = discretize_equilibrium(p, grid);
  const DensityField averaged = equilibrium_field(eq, grid);
  CsvWriter csv(path.string(), {"y", "beta", "discrete", "cell_log_average"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.row({grid.center(i), eq.value(grid.center(i)), kernel[i], averaged[i]});
  }
  csv.close();
}

void write_density_csv(const fs::path& path, const DensityField& f) {
  CsvWriter csv(path.string(), {"y", "v"});
  for (std::size_t i = 0; i < f.size(); ++i) csv.row({f.grid.center(i), f[i]});
  csv.close();
}

double max_step_increase(const std::vector<double>& xs) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < xs.size(); ++i) worst = std::max(worst, xs[i] - xs[i - 1]);
  return xs.size() > 1 ? worst : 0.0;
}

std::string lambda_dir_name(double lambda) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "lambda_%g", lambda);
  return buf;
}

}  // namespace

bool RunResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

DecaySummary summarize_decay(const CsvTable& decay, const KineticParams& p) {
  const auto& t = decay.column("t");
  const auto& h = decay.column("H");
  const auto& ki = decay.column("KI");
  const auto& l1 = decay.column("l1");
  const auto& wl2 = decay.column("wl2");
  const auto& mass = decay.column("mass");

  DecaySummary s;
  double mass_drift = 0.0;
  for (double x : mass) mass_drift = std::max(mass_drift, std::abs(x - mass.front()));
  s.checks.push_back({"mass_conserved", mass_drift <= 1e-10, "max |mass - mass(0)| = " + format_real(mass_drift)});

  const double rise = max_step_increase(h);
  s.checks.push_back(
      {"entropy_nonincreasing", rise <= kMonotoneTolerance, "largest increase of H between rows = " + format_real(rise)});

  const double h_max = *std::max_element(h.begin(), h.end());
  const double l1_max = *std::max_element(l1.begin(), l1.end());
  const bool at_equilibrium = l1_max <= kEquilibriumTolerance;
  if (at_equilibrium) {
    s.checks.push_back({"equilibrium_start", h_max <= kEquilibriumTolerance,
                        "max L1 = " + format_real(l1_max) + ", max H = " + format_real(h_max)});
    return s;
  }

  try {
    s.entropy_fit = fit_second_half(t, h);
  } catch (const InvalidArgument& e) {
    s.checks.push_back({"entropy_fit", false, e.what()});
  }
  try {
    s.l2_fit = fit_second_half(t, wl2);
  } catch (const InvalidArgument& e) {
    s.checks.push_back({"weighted_l2_fit", false, e.what()});
  }
  if (!admits_log_sobolev(p)) return s;

  const double k = log_sobolev_constant(p);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h.size(); ++i) worst = std::min(worst, ki[i] - h[i]);
  s.checks.push_back({"log_sobolev_rowwise", worst >= -kLsSlackTolerance, "min(K I - H) = " + format_real(worst)});

  if (s.entropy_fit) {
    const double bound = -kRateMargin / k;
    s.checks.push_back({"entropy_rate", s.entropy_fit->slope <= bound,
                        "slope " + format_real(s.entropy_fit->slope) + " vs bound " + format_real(bound)});
  }
  if (s.l2_fit) {
    const double bound = -2.0 * kRateMargin;
    s.checks.push_back({"weighted_l2_rate", s.l2_fit->slope <= bound,
                        "slope " + format_real(s.l2_fit->slope) + " vs bound " + format_real(bound)});
  }
  return s;
}

RunResult run_equilibrium(const ExperimentConfig& cfg) {
  const fs::path dir = ensure_dir(cfg.out);
  const KineticParams p = cfg.params();
  const Grid grid(cfg.n);
  write_equilibrium_csv(dir / "equilibrium.csv", p, grid);

  const BetaEquilibrium eq(p);
  const DensityField kernel = discretize_equilibrium(p, grid);
  const DensityField sampled = sampled_equilibrium(eq, grid);
  std::ostringstream os;
  os << regime_line(p) << "log_C = " << format_real(log_normalization(p)) << "\n"
     << "mean = " << format_real(eq.mean()) << "\n"
     << "discrete_mean = " << format_real(kernel.mean()) << "\n"
     << "l1_discrete_vs_beta = " << format_real(l1_distance(kernel, sampled)) << "\n";
  RunResult r{os.str(), {}};
  write_text(dir / "equilibrium.txt", r.report);
  return r;
}

RunResult run_solve(const ExperimentConfig& cfg) {
  const fs::path dir = ensure_dir(cfg.out);
  const KineticParams p = cfg.params();
  const Grid grid(cfg.n);
  const DensityField v0 = initial_density(cfg, grid);
  const Trajectory traj = solve(p, v0, cfg.dt, cfg.t_end, cfg.sample_every);
  const double k = admits_log_sobolev(p) ? log_sobolev_constant(p) : kNaN;

  {
    CsvWriter csv((dir / "decay.csv").string(), {"t", "H", "I", "KI", "l1", "wl2", "mass", "mean"});
    for (const TrajectoryRow& row : traj.rows) {
      csv.row({row.t, row.entropy, row.fisher, k * row.fisher, row.l1, row.weighted_l2, row.mass, row.mean});
    }
    csv.close();
  }
  write_equilibrium_csv(dir / "equilibrium.csv", p, grid);
  write_density_csv(dir / "final_state.csv", traj.final_density);

  // Verdicts are recomputed from the file just written.
  const DecaySummary s = summarize_decay(read_csv((dir / "decay.csv").string()), p);
  std::ostringstream os;
  os << regime_line(p) << "n = " << cfg.n << "\ndt = " << format_real(cfg.dt) << "\nt_end = " << format_real(cfg.t_end)
     << "\ninitial = " << cfg.initial << "\n"
     << fit_line("slope_log_H", s.entropy_fit) << fit_line("slope_log_wl2", s.l2_fit) << verdict_lines(s.checks);
  RunResult r{os.str(), s.checks};
  write_text(dir / "summary.txt", r.report);
  return r;
}

RunResult run_mc(const ExperimentConfig& cfg) {
  if (!cfg.mc) throw ConfigError("mc", "the mc subcommand needs at least one mc.* key");
  const McConfig& mc = *cfg.mc;
  const fs::path dir = ensure_dir(cfg.out);
  const KineticParams p = cfg.params();
  const InteractionParams ip(mc.gamma, p.lambda() * mc.gamma, mc.epsilon);

  const Grid fp_grid(cfg.n);
  const Grid hist_grid(mc.hist_cells);
  const DensityField f0 = initial_density(cfg, fp_grid);
  Ensemble ens = sample_ensemble(f0, mc.n_agents, mc.seed);
  DensityField v = f0;
  const ImplicitStepper stepper(p, fp_grid, cfg.dt);
  long fp_steps = 0;

  std::vector<double> times = mc.times;
  std::sort(times.begin(), times.end());

  CsvWriter hist_csv((dir / "mc_hist.csv").string(), {"t_fp", "y", "mc", "fp"});
  CsvWriter moments_csv((dir / "moments.csv").string(), {"sweep", "t_fp", "mean", "variance"});
  CsvWriter reject_csv((dir / "rejection_stats.csv").string(), {"t_fp", "sweeps", "pairs", "rejected", "fraction"});
  CsvWriter compare_csv((dir / "mc_vs_fp.csv").string(), {"t_fp", "sweeps", "l1", "mc_mean", "fp_mean"});

  auto moment_row = [&] {
    const Moments mo = moments(ens);
    moments_csv.row({static_cast<double>(ens.sweeps), static_cast<double>(ens.sweeps) * ip.fp_time_per_sweep(),
                     mo.mean, mo.variance.value_or(kNaN)});
  };
  moment_row();

  std::vector<Check> checks;
  std::ostringstream os;
  os << regime_line(p) << "N = " << mc.n_agents << "\nepsilon = " << format_real(mc.epsilon)
     << "\ngamma = " << format_real(mc.gamma) << "\nsigma2 = " << format_real(ip.sigma2()) << "\nseed = " << mc.seed
     << "\n";
  std::uint64_t pairs = 0;
  std::uint64_t rejected = 0;
  for (double t : times) {
    const std::uint64_t target = sweeps_for(t, ip);
    while (ens.sweeps < target) {
      const SweepStats st = mc_step(ens, ip);
      pairs += st.pairs;
      rejected += st.rejected;
      if (static_cast<long>(ens.sweeps % static_cast<std::uint64_t>(mc.moment_stride)) == 0) moment_row();
    }
    const double t_actual = static_cast<double>(ens.sweeps) * ip.fp_time_per_sweep();
    const long want = std::lround(t_actual / cfg.dt);
    for (; fp_steps < want; ++fp_steps) stepper.step(v.values);

    const DensityField h = histogram(ens, hist_grid);
    const DensityField fp = remap_density(v, hist_grid);
    for (std::size_t i = 0; i < hist_grid.size(); ++i) hist_csv.row({t_actual, hist_grid.center(i), h[i], fp[i]});
    const double l1 = l1_distance(h, fp);
    compare_csv.row({t_actual, static_cast<double>(ens.sweeps), l1, moments(ens).mean, v.mean()});
    reject_csv.row({t_actual, static_cast<double>(ens.sweeps), static_cast<double>(pairs),
                    static_cast<double>(rejected), pairs ? static_cast<double>(rejected) / pairs : 0.0});
    checks.push_back({"mc_vs_fp_t" + format_real(t_actual), l1 <= kMcL1Tolerance,
                      "L1 = " + format_real(l1) + " (tolerance " + format_real(kMcL1Tolerance) + ")"});
  }
  hist_csv.close();
  moments_csv.close();
  reject_csv.close();
  compare_csv.close();

  os << verdict_lines(checks);
  RunResult r{os.str(), checks};
  write_text(dir / "mc_summary.txt", r.report);
  return r;
}

RunResult run_sweep(const ExperimentConfig& cfg) {
  const fs::path dir = ensure_dir(cfg.out);
  RunResult all;
  CsvWriter csv((dir / "sweep_summary.csv").string(), {"lambda", "m", "slope_log_H", "slope_log_wl2", "passed"});
  for (double lambda : cfg.sweep_lambdas) {
    ExperimentConfig sub = cfg;
    sub.lambda = lambda;
    sub.out = (dir / lambda_dir_name(lambda)).string();
    sub.validate();
    const RunResult r = run_solve(sub);
    const DecaySummary s = summarize_decay(read_csv((fs::path(sub.out) / "decay.csv").string()), sub.params());
    csv.row({lambda, cfg.m, s.entropy_fit ? s.entropy_fit->slope : kNaN, s.l2_fit ? s.l2_fit->slope : kNaN,
             r.passed() ? 1.0 : 0.0});
    for (Check c : r.checks) {
      c.name = lambda_dir_name(lambda) + "/" + c.name;
      all.checks.push_back(std::move(c));
    }
  }
  csv.close();
  all.report = verdict_lines(all.checks);
  return all;
}

RunResult run_verify_ls(const ExperimentConfig& cfg) {
  const VerifyConfig& vc = cfg.verify;
  std::vector<std::pair<double, double>> points;
  for (double lambda : vc.lambdas) {
    const std::vector<double> ms = vc.ms.empty() ? default_m_values(lambda) : vc.ms;
    for (double m : ms) points.emplace_back(lambda, m);
  }
  std::string offenders;
  for (const auto& [lambda, m] : points) {
    if (!admits_log_sobolev(KineticParams(lambda, m))) {
      offenders += " (lambda=" + format_real(lambda) + ", m=" + format_real(m) + ")";
    }
  }
  if (!offenders.empty()) throw RegimeError("grid points outside the log-Sobolev regime:" + offenders);
  if (points.empty()) throw ConfigError("verify.lambda", "the grid is empty");

  const fs::path dir = ensure_dir(cfg.out);
  CsvWriter csv((dir / "ls_table.csv").string(), {"lambda", "m", "K", "rho", "rho_numeric", "rho_abs_error",
                                                 "min_ls_slack", "min_uniform_slack", "passed"});
  RunResult r;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const KineticParams p(points[i].first, points[i].second);
    const LsPointReport rep = verify_ls_point(p, vc.n, vc.samples, stream_key(vc.seed, i));
    csv.row({rep.lambda, rep.m, rep.k, rep.rho, rep.rho_numeric, std::abs(rep.rho_numeric - rep.rho),
             rep.min_ls_slack, rep.min_uniform_slack, rep.passed ? 1.0 : 0.0});
    r.checks.push_back({"lambda=" + format_real(rep.lambda) + " m=" + format_real(rep.m), rep.passed,
                        "min ls_slack " + format_real(rep.min_ls_slack) + ", rho error " +
                            format_real(std::abs(rep.rho_numeric - rep.rho)) +
                            (std::isnan(rep.min_uniform_slack)
                                 ? std::string()
                                 : ", min uniform slack " + format_real(rep.min_uniform_slack))});
  }
  csv.close();
  r.report = verdict_lines(r.checks);
  return r;
}

double fit_boundary_exponent(const KineticParams& p, bool upper) {
  constexpr int kPoints = 20;
  std::vector<double> log_d(kPoints);
  std::vector<double> g(kPoints);
  for (int j = 0; j < kPoints; ++j) {
    const double d = std::pow(10.0, -3.0 - 3.0 * j / (kPoints - 1));
    const double z = upper ? std::numbers::pi / 2.0 - d : -std::numbers::pi / 2.0 + d;
    log_d[j] = std::log(d);
    g[j] = g_density(p, z);
  }
  std::reverse(log_d.begin(), log_d.end());
  std::reverse(g.begin(), g.end());
  return fit_decay_rate(log_d, g, log_d.front(), log_d.back()).slope;
}

TransformReport check_transform(const KineticParams& p, const DensityField& smooth) {
  TransformReport r;
  const BetaEquilibrium eq(p);
  constexpr int kPoints = 1001;
  for (int j = 0; j < kPoints; ++j) {
    const double z = -1.5 + 3.0 * j / (kPoints - 1);
    const double reference = eq.value(std::sin(z)) * std::cos(z);
    const double g = g_density(p, z);
    r.max_rel_stationary = std::max(r.max_rel_stationary, std::abs(g - reference) / reference);
    r.max_rel_explicit = std::max(r.max_rel_explicit, std::abs(g_density_explicit(p, z) - g) / g);
  }

  r.admissible = admits_log_sobolev(p);
  if (r.admissible) {
    r.minimum = minimize_w_second(p);
    r.rho = bakry_emery_rho(p);
    const double s = std::sin(r.minimum.z_bar);
    r.quadratic_residual = p.m() * s * s + (p.lambda() - 2.0) * s + p.m();
    r.min_w_second_on_grid = std::numeric_limits<double>::infinity();
    constexpr int kConvexityPoints = 10000;
    for (int j = 0; j < kConvexityPoints; ++j) {
      const double z = -std::numbers::pi / 2.0 + std::numbers::pi * (j + 0.5) / kConvexityPoints;
      r.min_w_second_on_grid = std::min(r.min_w_second_on_grid, w_second(p, z));
    }
  }

  r.exponent_upper = boundary_exponent(p, true);
  r.exponent_lower = boundary_exponent(p, false);
  r.exponent_upper_fit = fit_boundary_exponent(p, true);
  r.exponent_lower_fit = fit_boundary_exponent(p, false);

  const ZField zf = pushforward_density(smooth, smooth.size());
  r.pushforward_mass_error = std::abs(zf.mass() - smooth.mass());
  r.roundtrip_l1 = l1_distance(pullback_density(zf, smooth.grid), smooth);
  return r;
}

std::vector<Check> transform_checks(const TransformReport& r) {
  auto exponent_ok = [](double fit, double exact) {
    return std::abs(fit - exact) <= kExponentRelTolerance * std::max(std::abs(exact), 1.0);
  };
  std::vector<Check> c{
      {"stationary_identity", r.max_rel_stationary <= kStationaryRelTolerance,
       "max relative error " + format_real(r.max_rel_stationary)},
      {"explicit_formula", r.max_rel_explicit <= kExplicitRelTolerance,
       "max relative error " + format_real(r.max_rel_explicit)},
      {"boundary_exponent_upper", exponent_ok(r.exponent_upper_fit, r.exponent_upper),
       "fit " + format_real(r.exponent_upper_fit) + " vs " + format_real(r.exponent_upper)},
      {"boundary_exponent_lower", exponent_ok(r.exponent_lower_fit, r.exponent_lower),
       "fit " + format_real(r.exponent_lower_fit) + " vs " + format_real(r.exponent_lower)},
      {"pushforward_mass", r.pushforward_mass_error <= kTransformMassTolerance,
       "mass error " + format_real(r.pushforward_mass_error)},
      {"roundtrip", r.roundtrip_l1 <= kRoundTripTolerance, "L1 " + format_real(r.roundtrip_l1)},
  };
  if (r.admissible) {
    c.push_back({"rho_minimum", std::abs(r.minimum.min_value - r.rho) <= kRhoTolerance,
                 "min W'' " + format_real(r.minimum.min_value) + " vs rho " + format_real(r.rho)});
    c.push_back({"stationarity_quadratic", std::abs(r.quadratic_residual) <= kQuadraticTolerance,
                 "residual " + format_real(r.quadratic_residual)});
    c.push_back({"convexity", r.min_w_second_on_grid > 0.0, "min W'' on grid " + format_real(r.min_w_second_on_grid)});
  }
  return c;
}

RunResult run_transform_check(const ExperimentConfig& cfg) {
  const fs::path dir = ensure_dir(cfg.out);
  const KineticParams p = cfg.params();
  // round trip is judged at 400 cells or finer
  const Grid grid(std::max<std::size_t>(cfg.n, 400));
  const TransformReport rep = check_transform(p, initial_density(cfg, grid));

  CsvWriter csv((dir / "transform.csv").string(), {"z", "g", "g_explicit", "v_sin_cos", "w_prime", "w_second"});
  const BetaEquilibrium eq(p);
  constexpr int kRows = 301;
  for (int j = 0; j < kRows; ++j) {
    const double z = -1.5 + 3.0 * j / (kRows - 1);
    csv.row({z, g_density(p, z), g_density_explicit(p, z), eq.value(std::sin(z)) * std::cos(z), w_prime(p, z),
             w_second(p, z)});
  }
  csv.close();

  RunResult r;
  r.checks = transform_checks(rep);
  std::ostringstream os;
  os << regime_line(p);
  if (rep.admissible) os << "z_bar = " << format_real(rep.minimum.z_bar) << "\n";
  os << verdict_lines(r.checks);
  r.report = os.str();
  write_text(dir / "transform_summary.txt", r.report);
  return r;
}

RunResult run_fit(const ExperimentConfig& cfg) {
  // without fit.input, refit the decay.csv a previous solve left in --out
  fs::path input = cfg.fit.input.empty() ? fs::path(cfg.out) / "decay.csv" : fs::path(cfg.fit.input);
  if (!cfg.fit.input.empty() && input.is_relative()) input = fs::path(cfg.base_dir) / input;
  const CsvTable table = read_csv(input.string());
  const auto& t = table.column("t");
  const auto& y = table.column(cfg.fit.column);
  if (t.empty()) throw DegenerateWindow("fit: " + input.string() + " has no rows");
  const double t0 = cfg.fit.t0.value_or(t.front() + 0.5 * (t.back() - t.front()));
  const double t1 = cfg.fit.t1.value_or(t.back());
  const DecayFit fit = fit_decay_rate(t, y, t0, t1);

  const fs::path dir = ensure_dir(cfg.out);
  CsvWriter csv((dir / "fit.csv").string(), {"slope", "intercept", "r2", "t0", "t1", "samples", "max_residual"});
  csv.row({fit.slope, fit.intercept, fit.r2, fit.t0, fit.t1, static_cast<double>(fit.samples), fit.max_residual});
  csv.close();
  RunResult r;
  r.report = "column = " + cfg.fit.column + "\n" + fit_line("slope", fit);
  return r;
}

}  // namespace opinionfp::harness
