#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "molcav/config.hpp"
#include "molcav/timeseries.hpp"
#include "molcav/wigner.hpp"

namespace molcav {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Environment variable holding the default thread count.
inline constexpr const char* kThreadsEnv = "MOLCAV_THREADS";

/// One `key = value` override, with the flag the user typed for the manifest.
struct ConfigOverride {
  std::string flag;   // e.g. "--dt"
  std::string key;    // config key, e.g. "dt"
  std::string value;
};

/// Loads the config (defaults when `path` is empty) and applies overrides in order.
SimulationConfig resolve_config(const std::optional<std::filesystem::path>& path,
                                const std::vector<ConfigOverride>& overrides);

/// Thread count from explicit request, then MOLCAV_THREADS, then the runtime default.
/// Applies it to OpenMP and returns it.
int configure_threads(std::optional<int> requested);

// Output directory of a run:
//   config.cfg              resolved config, lossless text form
//   timeseries.csv          records, streamed as the run progresses
//   molecule_states.tsv     grid, potential, dipole and vibrational eigenfunctions
//   checkpoints/step_<n>.ckpt
//   wigner/wigner_<t>fs.tsv and wigner/snapshots.csv
//   entropy.svg, negativity.svg, wigner_pair.svg, wigner_snapshots.svg
//   manifest.json           written last
struct RunRequest {
  SimulationConfig config;
  std::filesystem::path out_dir;
  std::vector<ConfigOverride> overrides;  // already applied; recorded only
  int threads = 1;
  /// Continue from this checkpoint instead of the initial state.
  std::optional<std::filesystem::path> resume_from;
  /// Stop after this absolute step, leaving a checkpoint (simulated interruption).
  std::optional<std::size_t> stop_after_step;
  bool write_plots = true;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string status;  // ok, stopped, aborted, failed
  std::string message;
  TimeSeries series;   // every record in timeseries.csv, including pre-resume ones
};

/// Never throws for module errors: they become a nonzero exit code and a message.
RunOutcome execute_run(const RunRequest& request, std::ostream& log);

struct SweepSpec {
  SimulationConfig base;
  std::vector<double> lambdas;
  /// Alternative to `lambdas`: target g/omega values, converted using the base system.
  std::vector<double> eta_targets;
  std::size_t parallel = 1;
};

/// Reads a config file that may carry `sweep.lambda`, `sweep.eta` and `sweep.parallel`.
SweepSpec parse_sweep_file(const std::filesystem::path& path);
/// Problems with the sweep itself (empty, non-positive or duplicate entries).
std::vector<std::string> sweep_problems(const SweepSpec& spec);

struct SweepRow {
  double lambda = 0.0;
  double eta = 0.0;
  std::optional<double> peak_entropy;  // max S(C|AB), bits
  std::optional<double> peak_time_fs;
  std::string status;
  std::string directory;
};

/// "increasing", "decreasing" (both strict), "not monotonic" or "insufficient data".
std::string monotonic_trend(const std::vector<std::optional<double>>& values);

struct SweepOutcome {
  int exit_code = kExitOk;
  std::vector<SweepRow> rows;
  std::string entropy_trend;
  std::string time_trend;
};

/// Trajectories in out_dir/lambda_<value>/, summary.csv and manifest.json at the top.
SweepOutcome execute_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                           const std::vector<ConfigOverride>& overrides, int threads, std::ostream& log);

struct WignerRequest {
  std::vector<std::filesystem::path> checkpoints;
  std::filesystem::path out_dir;
  std::size_t points = 201;
  std::optional<double> range;  // default covers |beta| = 2 plus margin
};

struct WignerOutcome {
  int exit_code = kExitOk;
  std::string message;
  std::vector<WignerField> fields;
};

/// Offline Wigner fields from checkpoints; no propagation.
WignerOutcome execute_wigner(const WignerRequest& request, std::ostream& log);

/// Config check only; prints problems and the coupling summary.
int execute_validate(const std::optional<std::filesystem::path>& path, const std::vector<ConfigOverride>& overrides,
                     std::ostream& out);

// Wigner field text form: comment header, then "x<TAB>y<TAB>W" rows, q major.
void write_wigner_field(const std::filesystem::path& path, const WignerField& field);
WignerField read_wigner_field(const std::filesystem::path& path);

/// Name used for a checkpoint taken at `step`.
std::string checkpoint_name(std::size_t step);

}  // namespace molcav
