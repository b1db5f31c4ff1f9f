#include "molcav/simulation.hpp"

#include <cmath>
#include <sstream>

#include "molcav/quantum_info.hpp"
#include "molcav/units.hpp"

namespace molcav {

SimulationSetup prepare_simulation(const SimulationConfig& raw) {
  const SimulationConfig cfg = validate_config(raw);
  const double mu = effective_reduced_mass(cfg);
  const std::size_t k = std::max<std::size_t>(cfg.n_vib_project, 2);

  auto solve = [&](const GridBasis1D& grid) {
    return solve_bound_states(grid, morse_potential(grid, cfg.morse), mu, k, cfg.morse.D_e);
  };
  VibrationalEigensystem eig1 = solve(cfg.grid1);
  VibrationalEigensystem eig2 = cfg.grid2 == cfg.grid1 ? eig1 : solve(cfg.grid2);
  HamiltonianAction h = assemble_hamiltonian(cfg, eig1, eig2);
  CouplingReport report = coupling_report(cfg, eig1);
  StateVector psi0 = initial_state(cfg, eig1, eig2);

  const double range = effective_wigner_range(cfg);
  PhaseSpaceGrid phase{cfg.wigner_points, cfg.wigner_points, range, range};
  check_phase_space_grid(phase, cfg.beta);

  return SimulationSetup{cfg, std::move(eig1), std::move(eig2), std::move(h), report, std::move(psi0), phase};
}

PropagatorSettings propagator_settings(const SimulationConfig& cfg) {
  PropagatorSettings s;
  s.dt = cfg.dt;
  s.krylov_dim = cfg.krylov_dim;
  s.tolerance = cfg.krylov_tol;
  return s;
}

std::string negativity_method(const SimulationConfig& cfg) {
  std::ostringstream o;
  o << "projected: E_N computed on rho_AB expressed in the lowest " << cfg.n_vib_project
    << " vibrational eigenstates per molecule (leakage column = discarded weight)";
  return o.str();
}

Record observe(const SimulationSetup& setup, const StateVector& psi, std::size_t step) {
  Record r;
  r.step = step;
  r.time_fs = units::au_to_fs(static_cast<double>(step) * setup.config.dt);
  r.norm = psi.norm();
  r.energy = setup.hamiltonian.expectation(psi);
  r.photon_number = psi.photon_number();

  const auto s = entropies_of_three_bipartitions(psi);
  r.entropy_a_bc = s.a_bc;
  r.entropy_b_ac = s.b_ac;
  r.entropy_c_ab = s.c_ab;

  const auto proj = project_molecular_state(psi, setup.eig1, setup.eig2, setup.config.n_vib_project);
  const DensityMatrix rho_ab = molecular_density(proj);
  r.negativity_ab = logarithmic_negativity(rho_ab);
  r.purity_ab = purity(rho_ab);
  r.leakage = proj.leakage;
  r.trusted = proj.trusted();

  if (setup.config.wigner_series) {
    const auto neg = wigner_negativity(wigner_from_density(reduced_photon_density(psi), setup.phase_grid, r.time_fs));
    r.wigner_min = neg.min_value;
    r.wigner_negativity_volume = neg.volume;
  }
  return r;
}

std::vector<std::string> run_metadata(const SimulationConfig& cfg) {
  std::vector<std::string> m;
  m.push_back("negativity: " + negativity_method(cfg));
  std::ostringstream o;
  o << "integrator: Lanczos adaptive krylov_dim<=" << cfg.krylov_dim << " dt_au=" << cfg.dt << " tol=" << cfg.krylov_tol
    << " renormalize=" << (cfg.renormalize ? "on" : "off");
  m.push_back(o.str());
  m.push_back("units: time fs, energy hartree (includes photon zero-point omega/2), entropies and negativity in bits");
  return m;
}

TimeSeries run_simulation(const SimulationSetup& setup, const RunObservers& obs, const RunOptions& options) {
  const SimulationConfig& cfg = setup.config;
  const std::size_t total = total_steps(cfg);
  const std::size_t stop = std::min(options.stop_step.value_or(total), total);
  StateVector psi = options.start_state ? *options.start_state : setup.initial;
  if (!(psi.basis == setup.hamiltonian.basis())) throw DimensionError("run_simulation: start state basis mismatch");

  TimeSeries ts;
  ts.metadata = run_metadata(cfg);

  KrylovPropagator prop(setup.hamiltonian, propagator_settings(cfg));
  StateVector next = psi;

  auto record = [&](std::size_t step) {
    ts.records.push_back(observe(setup, psi, step));
    if (obs.on_record) obs.on_record(ts.records.back());
  };
  auto notify = [&](std::size_t step, bool force) {
    const StepContext ctx{step, units::au_to_fs(static_cast<double>(step) * cfg.dt), psi, setup};
    for (const auto& o : obs.observers)
      if (o.callback && (force || (o.stride > 0 && step % o.stride == 0))) o.callback(ctx);
  };

  std::size_t step = options.start_step;
  record(step);
  notify(step, step == 0);

  while (step < stop) {
    next = psi;
    prop.step(next);
    if (cfg.renormalize) next.normalize();
    if (!next.all_finite()) {
      std::ostringstream msg;
      msg << "non-finite amplitudes after step " << step + 1;
      throw SimulationAborted(msg.str(), psi, step);
    }
    std::swap(psi, next);
    ++step;
    if (step % cfg.output_stride == 0 || step == stop) record(step);
    notify(step, false);
  }
  const StepContext end_ctx{step, units::au_to_fs(static_cast<double>(step) * cfg.dt), psi, setup};
  for (const auto& o : obs.observers)
    if (o.callback && o.at_end && !(o.stride > 0 && step % o.stride == 0)) o.callback(end_ctx);
  return ts;
}

TimeSeries run_simulation(const SimulationConfig& cfg, const RunObservers& observers) {
  return run_simulation(prepare_simulation(cfg), observers);
}

}  // namespace molcav
