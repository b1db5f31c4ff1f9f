#include <benchmark/benchmark.h>

#include <random>

#include "molcav/config.hpp"
#include "molcav/propagate.hpp"
#include "molcav/quantum_info.hpp"
#include "molcav/simulation.hpp"
#include "molcav/wigner.hpp"

using namespace molcav;

namespace {

SimulationConfig sized(std::size_t points, std::size_t levels) {
  SimulationConfig c;
  c.grid1.n_points = c.grid2.n_points = points;
  c.fock.n_levels = levels;
  return c;
}

// Setups are expensive; one per size, kept for the whole binary.
const SimulationSetup& setup_for(std::size_t points, std::size_t levels) {
  static const SimulationSetup reduced = prepare_simulation(sized(64, 24));
  static const SimulationSetup full = prepare_simulation(sized(150, 30));
  return points == 64 ? reduced : full;
}

// A state with some entanglement, so the reductions are not trivially rank one.
StateVector mixed_state(const SimulationSetup& s) {
  StateVector psi = s.initial;
  KrylovPropagator prop(s.hamiltonian, propagator_settings(s.config));
  for (int k = 0; k < 5; ++k) prop.step(psi, 200.0);
  return psi;
}

void BM_ApplyHamiltonian(benchmark::State& st) {
  const auto& s = setup_for(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
  const auto& h = s.hamiltonian;
  Eigen::VectorXcd in = s.initial.amplitudes, out(in.size());
  for (auto _ : st) {
    h.apply(std::span<const Complex>(in.data(), in.size()), std::span<Complex>(out.data(), out.size()));
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(in.size()));
}
BENCHMARK(BM_ApplyHamiltonian)->Args({64, 24})->Args({150, 30})->Unit(benchmark::kMillisecond);

void BM_KrylovStep(benchmark::State& st) {
  const auto& s = setup_for(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
  KrylovPropagator prop(s.hamiltonian, propagator_settings(s.config));
  StateVector psi = s.initial;
  std::size_t dim = 0;
  for (auto _ : st) dim = std::max(dim, prop.step(psi).krylov_used);
  st.counters["krylov_dim"] = static_cast<double>(dim);
}
BENCHMARK(BM_KrylovStep)->Args({64, 24})->Args({150, 30})->Unit(benchmark::kMillisecond);

void BM_EntanglementObservables(benchmark::State& st) {
  const auto& s = setup_for(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
  const StateVector psi = mixed_state(s);
  for (auto _ : st) {
    const auto e = entropies_of_three_bipartitions(psi);
    const auto proj = project_molecular_state(psi, s.eig1, s.eig2, s.config.n_vib_project);
    const double neg = logarithmic_negativity(molecular_density(proj));
    benchmark::DoNotOptimize(e.c_ab + neg);
  }
}
BENCHMARK(BM_EntanglementObservables)->Args({64, 24})->Args({150, 30})->Unit(benchmark::kMillisecond);

void BM_WignerField(benchmark::State& st) {
  const auto& s = setup_for(150, 30);
  const auto rho = reduced_photon_density(mixed_state(s));
  const auto n = static_cast<std::size_t>(st.range(0));
  const PhaseSpaceGrid g{n, n, 7.0, 7.0};
  for (auto _ : st) benchmark::DoNotOptimize(wigner_from_density(rho, g).values.data());
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_WignerField)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
