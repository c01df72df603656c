#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opinionfp/harness/config.hpp"
#include "opinionfp/harness/csv.hpp"
#include "opinionfp/harness/fit.hpp"

namespace opinionfp::harness {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Outcome of one subcommand: human-readable report plus the verdicts that
/// decide the exit status.
struct RunResult {
  std::string report;
  std::vector<Check> checks;

  bool passed() const;
};

/// Rate thresholds: fitted slopes must beat the theoretical rate times 0.95.
inline constexpr double kRateMargin = 0.95;
inline constexpr double kMonotoneTolerance = 1e-12;
inline constexpr double kEquilibriumTolerance = 1e-12;

struct DecaySummary {
  std::optional<DecayFit> entropy_fit;
  std::optional<DecayFit> l2_fit;
  std::vector<Check> checks;
};

/// Verdicts on a decay.csv table (columns t,H,I,KI,l1,wl2,mass,mean); a pure
/// function of the table and the parameters.
DecaySummary summarize_decay(const CsvTable& decay, const KineticParams& p);

RunResult run_equilibrium(const ExperimentConfig& cfg);
RunResult run_solve(const ExperimentConfig& cfg);
RunResult run_mc(const ExperimentConfig& cfg);
RunResult run_sweep(const ExperimentConfig& cfg);
/// Throws RegimeError listing every inadmissible grid point before any work.
RunResult run_verify_ls(const ExperimentConfig& cfg);
RunResult run_transform_check(const ExperimentConfig& cfg);
RunResult run_fit(const ExperimentConfig& cfg);

}  // namespace opinionfp::harness

#include "opinionfp/grid.hpp"
#include "opinionfp/trig_transform.hpp"

namespace opinionfp::harness {

/// Numbers behind transform-check.
struct TransformReport {
  double max_rel_stationary = 0.0;  ///< g_density vs v(sin z) cos z over |z| <= 1.5
  double max_rel_explicit = 0.0;    ///< tangent half-angle form vs g_density
  bool admissible = false;
  WSecondMinimum minimum;           ///< set when admissible
  double rho = 0.0;                 ///< closed form, when admissible
  double quadratic_residual = 0.0;  ///< m s^2 + (lambda-2) s + m at s = sin z_bar
  double min_w_second_on_grid = 0.0;
  double exponent_upper = 0.0;
  double exponent_upper_fit = 0.0;
  double exponent_lower = 0.0;
  double exponent_lower_fit = 0.0;
  double roundtrip_l1 = 0.0;
  double pushforward_mass_error = 0.0;
};

inline constexpr double kStationaryRelTolerance = 1e-12;
inline constexpr double kExplicitRelTolerance = 1e-10;
inline constexpr double kQuadraticTolerance = 1e-8;
inline constexpr double kExponentRelTolerance = 0.02;
inline constexpr double kRoundTripTolerance = 1e-6;
inline constexpr double kTransformMassTolerance = 1e-8;

/// `smooth` is the strictly positive density used for the round trip.
TransformReport check_transform(const KineticParams& p, const DensityField& smooth);
std::vector<Check> transform_checks(const TransformReport& r);

/// Log-log slope of g towards z = +pi/2 (upper) or -pi/2, from distances
/// 1e-3 down to 1e-6.
double fit_boundary_exponent(const KineticParams& p, bool upper);

}  // namespace opinionfp::harness
