#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opinionfp/errors.hpp"
#include "opinionfp/params.hpp"

namespace opinionfp::harness {

/// A field failed validation; field() names it.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string field, const std::string& what)
      : InvalidArgument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Malformed line in a config file.
class ParseError : public InvalidArgument {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : InvalidArgument(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct McConfig {
  std::size_t n_agents = 100000;
  double epsilon = 0.01;
  double gamma = 0.5;
  std::uint64_t seed = 1;
  std::vector<double> times{2.0};  ///< Fokker-Planck sample times
  std::size_t hist_cells = 50;
  long moment_stride = 10;  ///< sweeps between rows of moments.csv
};

struct VerifyConfig {
  std::vector<double> lambdas{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8};
  std::vector<double> ms;  ///< empty: a per-lambda set inside the admissible range
  std::size_t samples = 200;
  std::size_t n = 400;
  std::uint64_t seed = 1;
};

struct FitConfig {
  std::string input;
  std::string column = "H";
  std::optional<double> t0;  ///< default: midpoint of the series
  std::optional<double> t1;  ///< default: last sample
};

struct ExperimentConfig {
  double lambda = 0.5;
  double m = 0.0;
  std::size_t n = 200;
  double dt = 1e-3;
  double t_end = 10.0;
  long sample_every = 10;
  std::string initial = "bimodal";  ///< bimodal | uniform | equilibrium | file:<path>
  double bimodal_width = 0.15;
  std::string base_dir = ".";  ///< relative file: paths resolve here
  std::string out = ".";
  std::optional<McConfig> mc;
  std::vector<double> sweep_lambdas{0.2, 0.4, 0.6, 0.8};
  VerifyConfig verify;
  FitConfig fit;

  KineticParams params() const { return KineticParams(lambda, m); }
  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys and
/// malformed values raise ParseError with the line number. The result is
/// validated.
ExperimentConfig parse_config_text(std::string_view text, const std::string& source = "<config>");
ExperimentConfig parse_config(const std::string& path);

/// Comma-separated reals, e.g. "0.2, 0.4".
std::vector<double> parse_real_list(std::string_view text);

}  // namespace opinionfp::harness
