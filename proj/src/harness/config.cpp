#include "opinionfp/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace opinionfp::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_real(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("expected a real number, got '" + std::string(s) + "'");
  }
  return v;
}

template <class Int>
Int to_integer(std::string_view s) {
  s = trim(s);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

McConfig& mc_block(ExperimentConfig& c) {
  if (!c.mc) c.mc.emplace();
  return *c.mc;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"lambda", [](auto& c, auto v) { c.lambda = to_real(v); }},
      {"m", [](auto& c, auto v) { c.m = to_real(v); }},
      {"n", [](auto& c, auto v) { c.n = to_integer<std::size_t>(v); }},
      {"dt", [](auto& c, auto v) { c.dt = to_real(v); }},
      {"t_end", [](auto& c, auto v) { c.t_end = to_real(v); }},
      {"sample_every", [](auto& c, auto v) { c.sample_every = to_integer<long>(v); }},
      {"initial", [](auto& c, auto v) { c.initial = std::string(v); }},
      {"bimodal_width", [](auto& c, auto v) { c.bimodal_width = to_real(v); }},
      {"out", [](auto& c, auto v) { c.out = std::string(v); }},
      {"mc.n_agents", [](auto& c, auto v) { mc_block(c).n_agents = to_integer<std::size_t>(v); }},
      {"mc.epsilon", [](auto& c, auto v) { mc_block(c).epsilon = to_real(v); }},
      {"mc.gamma", [](auto& c, auto v) { mc_block(c).gamma = to_real(v); }},
      {"mc.seed", [](auto& c, auto v) { mc_block(c).seed = to_integer<std::uint64_t>(v); }},
      {"mc.times", [](auto& c, auto v) { mc_block(c).times = parse_real_list(v); }},
      {"mc.hist_cells", [](auto& c, auto v) { mc_block(c).hist_cells = to_integer<std::size_t>(v); }},
      {"mc.moment_stride", [](auto& c, auto v) { mc_block(c).moment_stride = to_integer<long>(v); }},
      {"sweep.lambda", [](auto& c, auto v) { c.sweep_lambdas = parse_real_list(v); }},
      {"verify.lambda", [](auto& c, auto v) { c.verify.lambdas = parse_real_list(v); }},
      {"verify.m", [](auto& c, auto v) { c.verify.ms = parse_real_list(v); }},
      {"verify.samples", [](auto& c, auto v) { c.verify.samples = to_integer<std::size_t>(v); }},
      {"verify.n", [](auto& c, auto v) { c.verify.n = to_integer<std::size_t>(v); }},
      {"verify.seed", [](auto& c, auto v) { c.verify.seed = to_integer<std::uint64_t>(v); }},
      {"fit.input", [](auto& c, auto v) { c.fit.input = std::string(v); }},
      {"fit.column", [](auto& c, auto v) { c.fit.column = std::string(v); }},
      {"fit.t0", [](auto& c, auto v) { c.fit.t0 = to_real(v); }},
      {"fit.t1", [](auto& c, auto v) { c.fit.t1 = to_real(v); }},
  };
  return table;
}

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(to_real(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

void ExperimentConfig::validate() const {
  require(positive_finite(lambda), "lambda", "must be a positive finite number");
  require(std::isfinite(m) && std::abs(m) < 1.0, "m", "must lie in (-1, 1)");
  require(n >= 4, "n", "needs at least 4 cells");
  require(positive_finite(dt), "dt", "must be positive");
  require(positive_finite(t_end), "t_end", "must be positive");
  require(sample_every > 0, "sample_every", "must be positive");
  require(positive_finite(bimodal_width), "bimodal_width", "must be positive");
  require(initial == "bimodal" || initial == "uniform" || initial == "equilibrium" || initial.rfind("file:", 0) == 0,
          "initial", "expected bimodal, uniform, equilibrium or file:<path>, got '" + initial + "'");
  if (mc) {
    require(mc->n_agents >= 2 && mc->n_agents % 2 == 0, "mc.n_agents", "must be even and at least 2");
    require(mc->epsilon > 0.0 && mc->epsilon <= 1.0, "mc.epsilon", "must lie in (0, 1]");
    require(mc->gamma > 0.0 && mc->gamma < 1.0, "mc.gamma", "must lie in (0, 1)");
    require(mc->hist_cells >= 4, "mc.hist_cells", "needs at least 4 cells");
    require(mc->moment_stride > 0, "mc.moment_stride", "must be positive");
    for (double t : mc->times) require(positive_finite(t), "mc.times", "sample times must be positive");
  }
  for (double l : sweep_lambdas) require(positive_finite(l), "sweep.lambda", "entries must be positive");
  for (double l : verify.lambdas) require(positive_finite(l), "verify.lambda", "entries must be positive");
  for (double x : verify.ms) require(std::isfinite(x) && std::abs(x) < 1.0, "verify.m", "entries must lie in (-1, 1)");
  require(verify.samples > 0, "verify.samples", "must be positive");
  require(verify.n >= 4, "verify.n", "needs at least 4 cells");
}

ExperimentConfig parse_config_text(std::string_view text, const std::string& source) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ParseError(source, line_no, "unknown key '" + std::string(key) + "'");
    if (value.empty()) throw ParseError(source, line_no, "missing value for '" + std::string(key) + "'");
    try {
      it->second(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, std::string(key) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig cfg = parse_config_text(buffer.str(), path);
  cfg.base_dir = std::filesystem::path(path).parent_path().string();
  if (cfg.base_dir.empty()) cfg.base_dir = ".";
  return cfg;
}

}  // namespace opinionfp::harness
