#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "molcav/config.hpp"
#include "molcav/error.hpp"
#include "molcav/lightmatter.hpp"
#include "molcav/matter.hpp"
#include "molcav/propagate.hpp"
#include "molcav/timeseries.hpp"
#include "molcav/wigner.hpp"

namespace molcav {

/// Everything a trajectory needs, derived once from a validated config.
/// Shareable read-only across trajectories.
struct SimulationSetup {
  SimulationConfig config;
  VibrationalEigensystem eig1;
  VibrationalEigensystem eig2;
  HamiltonianAction hamiltonian;
  CouplingReport coupling;
  StateVector initial;
  PhaseSpaceGrid phase_grid;
};

/// Validates `cfg`, solves both molecules, assembles H and builds the initial state.
SimulationSetup prepare_simulation(const SimulationConfig& cfg);

PropagatorSettings propagator_settings(const SimulationConfig& cfg);

/// Descriptive label of the negativity method, carried into output metadata.
std::string negativity_method(const SimulationConfig& cfg);

/// Comment lines heading a time series: method labels and units.
std::vector<std::string> run_metadata(const SimulationConfig& cfg);

/// Observables of one state; Wigner columns only when the config asks for them.
Record observe(const SimulationSetup& setup, const StateVector& psi, std::size_t step);

struct StepContext {
  std::size_t step = 0;
  double time_fs = 0.0;
  const StateVector& psi;
  const SimulationSetup& setup;
};

/// Named callback fired every `stride` steps (and at step 0 of a fresh run).
struct Observer {
  std::string name;
  std::size_t stride = 1;
  std::function<void(const StepContext&)> callback;
  /// Also fire at the last step of the run when it is not a stride multiple.
  bool at_end = false;
};

struct RunObservers {
  std::vector<Observer> observers;
  /// Fired with every record as soon as it is computed (streaming output).
  std::function<void(const Record&)> on_record;
};

struct RunOptions {
  /// Resume state and the step it corresponds to; default is the prepared initial state at step 0.
  std::optional<StateVector> start_state;
  std::size_t start_step = 0;
  /// Stop after this absolute step (clamped to the configured total).
  std::optional<std::size_t> stop_step;
};

/// Raised when the state turns non-finite. Carries the last finite state.
class SimulationAborted : public NumericalError {
 public:
  SimulationAborted(const std::string& what, StateVector last_good, std::size_t step)
      : NumericalError(what), last_good_(std::move(last_good)), step_(step) {}
  const StateVector& last_good() const { return last_good_; }
  std::size_t step() const { return step_; }

 private:
  StateVector last_good_;
  std::size_t step_;
};

/// Propagates from the start state to t_final, recording observables every
/// output_stride steps, at the first step and at the final step.
TimeSeries run_simulation(const SimulationSetup& setup, const RunObservers& observers = {},
                          const RunOptions& options = {});
TimeSeries run_simulation(const SimulationConfig& cfg, const RunObservers& observers = {});

}  // namespace molcav
