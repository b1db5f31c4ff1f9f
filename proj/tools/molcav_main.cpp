#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "molcav/error.hpp"
#include "molcav/harness.hpp"

using namespace molcav;

namespace {

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<int> threads;
  std::optional<std::string> dt;
  std::optional<std::string> t_final;
  std::vector<std::string> sets;  // key=value

  void add_to(CLI::App* app, bool with_config = true) {
    if (with_config) app->add_option("-c,--config", config, "config file (key = value lines); defaults apply when omitted");
    app->add_option("--threads", threads, "worker threads (default: $MOLCAV_THREADS or all cores)")->check(CLI::PositiveNumber);
    app->add_option("--dt", dt, "override time step, atomic units");
    app->add_option("--t-final", t_final, "override duration, fs");
    app->add_option("--set", sets, "override any config entry, key=value (repeatable)");
  }

  std::vector<ConfigOverride> overrides() const {
    std::vector<ConfigOverride> o;
    if (dt) o.push_back({"--dt", "dt", *dt});
    if (t_final) o.push_back({"--t-final", "t_final", *t_final});
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError({"--set expects key=value, got '" + s + "'"});
      o.push_back({"--set", s.substr(0, eq), s.substr(eq + 1)});
    }
    return o;
  }
};

std::optional<std::filesystem::path> as_path(const std::optional<std::string>& s) {
  return s ? std::optional<std::filesystem::path>(*s) : std::nullopt;
}

void print_config_error(const ConfigError& e) {
  std::cerr << "error: invalid configuration:\n";
  for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"molcav: two vibrating molecules coupled to one cavity mode"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string run_out;
  std::optional<std::string> resume;
  std::optional<std::size_t> stop_after;
  bool no_plots = false;
  auto* run = app.add_subcommand("run", "propagate one trajectory and write series, checkpoints, Wigner snapshots and plots");
  run_flags.add_to(run);
  run->add_option("-o,--out", run_out, "output directory")->required();
  run->add_option("--resume", resume, "continue from this checkpoint");
  run->add_option("--stop-after-step", stop_after, "stop after this absolute step, leaving a checkpoint");
  run->add_flag("--no-plots", no_plots, "skip SVG output");

  CommonFlags sweep_flags;
  std::string sweep_out;
  std::vector<double> lambdas, etas;
  std::optional<std::size_t> parallel;
  auto* sweep = app.add_subcommand("sweep", "run one trajectory per coupling value and summarize the entropy peaks");
  sweep_flags.add_to(sweep);
  sweep->add_option("-o,--out", sweep_out, "output directory")->required();
  sweep->add_option("--lambda", lambdas, "coupling values, au (overrides sweep.lambda)")->delimiter(',');
  sweep->add_option("--eta", etas, "target g/omega values instead of lambda")->delimiter(',');
  sweep->add_option("--parallel", parallel, "trajectories run at once")->check(CLI::PositiveNumber);

  std::vector<std::string> checkpoints;
  std::string wigner_out;
  std::size_t points = 201;
  std::optional<double> range;
  auto* wigner = app.add_subcommand("wigner", "recompute photon Wigner fields from checkpoints");
  wigner->add_option("checkpoint", checkpoints, "checkpoint files")->required();
  wigner->add_option("-o,--out", wigner_out, "output directory")->required();
  wigner->add_option("--points", points, "samples per phase-space axis");
  wigner->add_option("--range", range, "half-width of both axes (dimensionless)");

  CommonFlags validate_flags;
  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate_flags.add_to(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*run) {
      const int threads = configure_threads(run_flags.threads);
      RunRequest req;
      req.overrides = run_flags.overrides();
      req.config = resolve_config(as_path(run_flags.config), req.overrides);
      req.out_dir = run_out;
      req.threads = threads;
      if (resume) req.resume_from = *resume;
      req.stop_after_step = stop_after;
      req.write_plots = !no_plots;
      const RunOutcome r = execute_run(req, std::cerr);
      if (r.exit_code == kExitOk) std::cerr << "run " << r.status << ": " << r.message << '\n';
      return r.exit_code;
    }
    if (*sweep) {
      const int threads = configure_threads(sweep_flags.threads);
      const auto overrides = sweep_flags.overrides();
      SweepSpec spec;
      if (sweep_flags.config) spec = parse_sweep_file(*sweep_flags.config);
      for (const auto& o : overrides) apply_config_entry(spec.base, o.key, o.value);
      if (!lambdas.empty()) {
        spec.lambdas = lambdas;
        spec.eta_targets.clear();
      }
      if (!etas.empty()) {
        spec.eta_targets = etas;
        if (lambdas.empty()) spec.lambdas.clear();
      }
      if (parallel) spec.parallel = *parallel;
      return execute_sweep(spec, sweep_out, overrides, threads, std::cerr).exit_code;
    }
    if (*wigner) {
      configure_threads(std::nullopt);
      WignerRequest req;
      for (const auto& c : checkpoints) req.checkpoints.emplace_back(c);
      req.out_dir = wigner_out;
      req.points = points;
      req.range = range;
      return execute_wigner(req, std::cerr).exit_code;
    }
    if (*validate) return execute_validate(as_path(validate_flags.config), validate_flags.overrides(), std::cout);
  } catch (const ConfigError& e) {
    print_config_error(e);
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
