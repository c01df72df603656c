#include "opinionfp/harness/initial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "opinionfp/fp_solver.hpp"

namespace opinionfp::harness {

namespace {

double normal_cdf(double x, double mu, double sd) { return 0.5 * std::erfc(-(x - mu) / (sd * std::numbers::sqrt2)); }

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

DensityField bimodal_density(const Grid& grid, double width) {
  if (!(width > 0.0)) throw ConfigError("bimodal_width", "must be positive");
  DensityField f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lo = grid.interface(i);
    const double hi = grid.interface(i + 1);
    double mass = 0.0;
    for (double mu : {-0.5, 0.5}) mass += normal_cdf(hi, mu, width) - normal_cdf(lo, mu, width);
    f[i] = 0.5 * mass / grid.dy();
  }
  f.normalize();
  return f;
}

DensityField uniform_density(const Grid& grid) { return DensityField(grid, std::vector<double>(grid.size(), 0.5)); }

DensityField density_from_file(const Grid& grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read initial density file " + path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.rfind(',');
    const std::string_view field = comma == std::string::npos ? std::string_view(line)
                                                              : std::string_view(line).substr(comma + 1);
    double v = 0.0;
    if (!parse_double(field, v)) {
      if (line_no == 1) continue;  // header
      throw ConfigError("initial", path + ":" + std::to_string(line_no) + ": not a number");
    }
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("initial", path + ":" + std::to_string(line_no) + ": density values must be nonnegative");
    }
    values.push_back(v);
  }
  if (values.size() != grid.size()) {
    throw ConfigError("initial", path + " holds " + std::to_string(values.size()) + " values for " +
                                     std::to_string(grid.size()) + " cells");
  }
  DensityField f(grid, std::move(values));
  f.normalize();
  return f;
}

DensityField initial_density(const ExperimentConfig& cfg, const Grid& grid) {
  if (cfg.initial == "bimodal") return bimodal_density(grid, cfg.bimodal_width);
  if (cfg.initial == "uniform") return uniform_density(grid);
  if (cfg.initial == "equilibrium") return discretize_equilibrium(cfg.params(), grid);
  if (cfg.initial.rfind("file:", 0) == 0) {
    std::filesystem::path p = cfg.initial.substr(5);
    if (p.is_relative()) p = std::filesystem::path(cfg.base_dir) / p;
    return density_from_file(grid, p.string());
  }
  throw ConfigError("initial", "unknown preset '" + cfg.initial + "'");
}

DensityField remap_density(const DensityField& f, const Grid& target) {
  const Grid& src = f.grid;
  // Cumulative mass is piecewise linear, so the remap is exact.
  std::vector<double> prefix(src.size() + 1, 0.0);
  for (std::size_t i = 0; i < src.size(); ++i) prefix[i + 1] = prefix[i] + f[i];
  auto cdf = [&](double y) {
    const double u = std::clamp((y + 1.0) / src.dy(), 0.0, static_cast<double>(src.size()));
    const auto k = std::min(static_cast<std::size_t>(u), src.size() - 1);
    return (prefix[k] + (u - static_cast<double>(k)) * f[k]) * src.dy();
  };
  DensityField out(target);
  double prev = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double next = cdf(target.interface(i + 1));
    out[i] = (next - prev) / target.dy();
    prev = next;
  }
  return out;
}

}  // namespace opinionfp::harness
