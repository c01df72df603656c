// opinionfp: command-line front end for the solver, Monte Carlo and checks.

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "opinionfp/errors.hpp"
#include "opinionfp/harness/config.hpp"
#include "opinionfp/harness/runs.hpp"

namespace {

namespace h = opinionfp::harness;

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kCheckFailed = 3 };

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<double> dt;
  std::optional<double> t_end;
};

h::ExperimentConfig load(const Options& o) {
  h::ExperimentConfig cfg = o.config.empty() ? h::parse_config_text("") : h::parse_config(o.config);
  if (o.out) cfg.out = *o.out;
  if (o.n) cfg.n = *o.n;
  if (o.dt) cfg.dt = *o.dt;
  if (o.t_end) cfg.t_end = *o.t_end;
  if (o.seed) {
    if (cfg.mc) cfg.mc->seed = *o.seed;
    cfg.verify.seed = *o.seed;
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fokker-Planck opinion model: solver, Monte Carlo and inequality checks"};
  app.require_subcommand(1);
  Options opts;

  using Runner = std::function<h::RunResult(const h::ExperimentConfig&)>;
  const std::map<std::string, std::pair<std::string, Runner>> commands{
      {"equilibrium", {"Write the Beta equilibrium and its discrete counterparts", h::run_equilibrium}},
      {"solve", {"Integrate the Fokker-Planck equation and fit decay rates", h::run_solve}},
      {"mc", {"Monte Carlo binary interactions compared with the solver", h::run_mc}},
      {"sweep", {"Run solve for every lambda in sweep.lambda", h::run_sweep}},
      {"verify-ls", {"Random battery for the weighted log-Sobolev inequality", h::run_verify_ls}},
      {"transform-check", {"Checks of the z = arcsin y change of variables", h::run_transform_check}},
      {"fit", {"Fit an exponential rate to one column of a CSV", h::run_fit}},
  };
  std::map<CLI::App*, const Runner*> dispatch;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", opts.config, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "output directory");
    sub->add_option("--seed", opts.seed, "random seed (mc and verify-ls)");
    sub->add_option("--n", opts.n, "number of grid cells");
    sub->add_option("--dt", opts.dt, "time step");
    sub->add_option("--t-end", opts.t_end, "final time");
    dispatch[sub] = &entry.second;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const h::ExperimentConfig cfg = load(opts);
    for (const auto& [sub, runner] : dispatch) {
      if (!sub->parsed()) continue;
      const h::RunResult result = (*runner)(cfg);
      std::cout << result.report;
      return result.passed() ? kOk : kCheckFailed;
    }
  } catch (const opinionfp::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const opinionfp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
