#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "molcav/basis.hpp"

namespace molcav {

/// V(r) = D_e (exp(-a (r - r_e)) - 1)^2, O-H stretch defaults.
struct MorseParams {
  double D_e = 0.1994;  // hartree
  double r_e = 1.821;   // bohr
  double a = 1.189;     // 1/bohr

  bool operator==(const MorseParams&) const = default;
};

/// Where the Mecke coordinate x is measured from.
enum class DipoleOrigin {
  Absolute,     // x = r
  Equilibrium,  // x = r - r_e
};

/// R(x) = -gamma x exp(-delta x).
struct MeckeParams {
  double gamma = 1.634;
  double delta = 0.8818;  // 1/bohr
  DipoleOrigin origin = DipoleOrigin::Absolute;

  bool operator==(const MeckeParams&) const = default;
};

/// Lowest eigenpairs of one molecule's 1D Hamiltonian. Column k of
/// `wavefunctions` is phi_k sampled on the grid, normalized so that
/// sum_i phi_k(r_i)^2 * spacing = 1.
struct VibrationalEigensystem {
  GridBasis1D grid;
  std::vector<double> energies;
  Eigen::MatrixXd wavefunctions;

  std::size_t count() const { return energies.size(); }
  /// phi_k * sqrt(spacing): the unit-norm discrete vector used inside state vectors.
  Eigen::VectorXd unit_vector(std::size_t k) const;
  double transition_energy(std::size_t i, std::size_t j) const { return energies[j] - energies[i]; }
};

std::vector<double> morse_potential(const GridBasis1D& grid, const MorseParams& p);
double morse_potential_at(double r, const MorseParams& p);

std::vector<double> mecke_dipole(const GridBasis1D& grid, const MeckeParams& p, const MorseParams& morse = {});
double mecke_dipole_at(double x, const MeckeParams& p);

/// Central 8th-order second-derivative weights c_{-4..4} (index k+4), already
/// divided by spacing^2.
std::array<double, 9> kinetic_stencil(double spacing);

/// Closed-form Morse levels E_n = w_e (n + 1/2) - a^2/(2 mu) (n + 1/2)^2 measured
/// from the well bottom.
double analytic_morse_level(const MorseParams& p, double reduced_mass, std::size_t n);

/// Reduced mass that places the analytic 0->1 Morse gap exactly at `gap`
/// (hartree). Takes the light-anharmonicity root of w_e - a^2/mu = gap.
double reduced_mass_for_gap(const MorseParams& p, double gap);

/// Dense banded -(1/2mu) d^2/dr^2 + V on the grid with hard walls.
Eigen::MatrixXd one_dimensional_hamiltonian(const GridBasis1D& grid, std::span<const double> potential,
                                            double reduced_mass);

/// Lowest `k` eigenpairs. `bound_threshold` is the energy every returned level
/// must stay below; by default the potential at the right (dissociative) edge.
VibrationalEigensystem solve_bound_states(const GridBasis1D& grid, std::span<const double> potential,
                                          double reduced_mass, std::size_t k,
                                          std::optional<double> bound_threshold = std::nullopt);

double transition_dipole(const VibrationalEigensystem& eig, std::span<const double> dipole, std::size_t i,
                         std::size_t j);
/// Full k x k dipole matrix in the eigenbasis.
Eigen::MatrixXd dipole_matrix(const VibrationalEigensystem& eig, std::span<const double> dipole);

/// Tab-separated columns r, V, R, phi_0 .. phi_{k-1}.
void write_molecule_table(std::ostream& out, const VibrationalEigensystem& eig, std::span<const double> potential,
                          std::span<const double> dipole);

}  // namespace molcav
