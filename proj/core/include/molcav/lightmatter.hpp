#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "molcav/basis.hpp"
#include "molcav/config.hpp"
#include "molcav/matter.hpp"
#include "molcav/state.hpp"

namespace molcav {

/// Grid-space data for one molecule.
struct MolecularTerms {
  GridBasis1D grid;
  std::vector<double> potential;  // hartree
  std::vector<double> dipole;     // bohr * e
  double reduced_mass = 1.0;
};

MolecularTerms molecular_terms(const GridBasis1D& grid, const SimulationConfig& cfg);

/// <H> split into the pieces of the squared-displacement expansion.
struct EnergyComponents {
  double molecule1 = 0.0;         // <p1^2/2mu + V1>
  double molecule2 = 0.0;         // <p2^2/2mu + V2>
  double photon_kinetic = 0.0;    // <p^2>/2
  double photon_potential = 0.0;  // omega^2 <q^2>/2
  double bilinear = 0.0;          // -omega lambda <R q>
  double self_energy = 0.0;       // lambda^2 <R^2>/2
  double total() const {
    return molecule1 + molecule2 + photon_kinetic + photon_potential + bilinear + self_energy;
  }
};

/// Matrix-free action of
///   H = sum_i [p_i^2/2mu + V(r_i)] + (1/2)[p^2 + omega^2 (q - lambda R/omega)^2],
/// R = R(r_1) + R(r_2), on grid x grid x Fock. Immutable after construction.
class HamiltonianAction {
 public:
  HamiltonianAction(MolecularTerms molecule1, MolecularTerms molecule2, FockBasis photon, double lambda);

  const CompositeIndex& basis() const { return basis_; }
  double omega() const { return photon_.omega; }
  double lambda() const { return lambda_; }
  const MolecularTerms& molecule1() const { return m1_; }
  const MolecularTerms& molecule2() const { return m2_; }

  /// out = H in. Both spans have basis().size() elements and must not alias.
  void apply(std::span<const Complex> in, std::span<Complex> out) const;
  StateVector apply(const StateVector& psi) const;

  double expectation(const StateVector& psi) const;
  /// Evaluated term by term with explicit Fock matrices for q, q^2 and p^2.
  EnergyComponents energy_components(const StateVector& psi) const;

  /// Fock-basis q = (a + a^dag)/sqrt(2 omega).
  const Eigen::MatrixXd& q_matrix() const { return q_; }
  /// Projection of the untruncated q^2 (pentadiagonal).
  const Eigen::MatrixXd& q2_matrix() const { return q2_; }
  /// Projection of the untruncated p^2 (pentadiagonal).
  const Eigen::MatrixXd& p2_matrix() const { return p2_; }

  /// Gershgorin bound on the spectral radius.
  double norm_estimate() const { return norm_estimate_; }

  /// Non-fatal assembly diagnostics (resonance mismatch).
  const std::vector<std::string>& warnings() const { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  MolecularTerms m1_;
  MolecularTerms m2_;
  FockBasis photon_;
  double lambda_;
  CompositeIndex basis_;

  std::array<double, 5> hop1_{};    // kinetic weights for offsets 0..4, molecule 1
  std::array<double, 5> hop2_{};
  std::vector<double> grid_diag_;   // V1 + V2 + stencil centers + lambda^2 R^2 / 2, per (i1, i2)
  std::vector<double> coupling_;    // -omega lambda R, per (i1, i2)
  std::vector<double> photon_diag_; // omega (n + 1/2)
  std::vector<double> q_off_;       // <n|q|n+1>
  Eigen::MatrixXd q_, q2_, p2_;
  double norm_estimate_ = 0.0;
  std::vector<std::string> warnings_;
};

/// Cavity frequency a config resolves to: the explicit value, or the 0->1 gap.
double cavity_frequency(const SimulationConfig& cfg, const VibrationalEigensystem& eig);

HamiltonianAction assemble_hamiltonian(const SimulationConfig& cfg, const VibrationalEigensystem& eig1,
                                       const VibrationalEigensystem& eig2);

StateVector apply_hamiltonian(const HamiltonianAction& h, const StateVector& psi);

struct CouplingReport {
  double g = 0.0;        // hartree
  double eta = 0.0;      // g / omega
  double omega = 0.0;    // cavity frequency, hartree
  double omega01 = 0.0;  // molecular 0->1 gap, cm^-1
  double d01 = 0.0;      // |<phi_0|R|phi_1>|, bohr
  double lambda = 0.0;
};

/// g = lambda sqrt(omega/2) |d01|, eta = g/omega.
CouplingReport coupling_report(double lambda, double omega, const VibrationalEigensystem& eig,
                               std::span<const double> dipole);
CouplingReport coupling_report(const SimulationConfig& cfg, const VibrationalEigensystem& eig);

/// Truncated coherent state amplitudes e^{-|b|^2/2} b^n / sqrt(n!), n < n_levels, unnormalized.
Eigen::VectorXcd coherent_amplitudes(Complex beta, std::size_t n_levels);

/// phi_0 x phi_0 x |beta>, renormalized. Throws ConfigError if the coherent
/// truncation exceeds kCoherentTruncationLimit.
StateVector initial_state(const SimulationConfig& cfg, const VibrationalEigensystem& eig1,
                          const VibrationalEigensystem& eig2);

/// phi_a x phi_b x <photon> with explicit photon amplitudes.
StateVector product_state(const Eigen::VectorXd& mol1, const Eigen::VectorXd& mol2, const Eigen::VectorXcd& photon);

}  // namespace molcav
