#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "molcav/matter.hpp"
#include "molcav/state.hpp"

namespace molcav {

/// Dense Hermitian reduced state. `dims` lists the tensor factors in order;
/// their product is the matrix size.
struct DensityMatrix {
  Eigen::MatrixXcd elements;
  std::vector<std::size_t> dims;

  DensityMatrix() = default;
  DensityMatrix(Eigen::MatrixXcd m, std::vector<std::size_t> d);

  std::size_t size() const { return static_cast<std::size_t>(elements.rows()); }
  Complex trace() const { return elements.trace(); }
  double hermiticity_residual() const { return (elements - elements.adjoint()).cwiseAbs().maxCoeff(); }
  /// Ascending eigenvalues of the Hermitian part.
  Eigen::VectorXd eigenvalues() const;
};

/// Subsystems: A = molecule 1, B = molecule 2, C = photon mode.
enum class Keep { A, B, C, AB, AC, BC };

/// Tr_rest |psi><psi| by reshaping psi to (kept) x (rest) and forming M M^dag.
DensityMatrix reduce_pure_state(const StateVector& psi, Keep keep);

/// Eigenvalues in (-dust, 0) are clipped; anything below -dust is an error.
inline constexpr double kEigenvalueDust = 1e-8;

/// -Tr rho log2 rho in bits. Throws NumericalError on eigenvalues below -kEigenvalueDust.
double von_neumann_entropy(const DensityMatrix& rho);

struct BipartitionEntropies {
  double a_bc = 0.0;  // molecule 1 | rest
  double b_ac = 0.0;  // molecule 2 | rest
  double c_ab = 0.0;  // photon | molecules
};

BipartitionEntropies entropies_of_three_bipartitions(const StateVector& psi);

/// Coefficients of psi on phi_i x phi_j x |n> for i, j < n_vib. Rows are
/// i * n_vib + j, columns are n.
struct ProjectedMolecularState {
  std::size_t n_vib = 0;
  std::size_t nf = 0;
  Eigen::MatrixXcd coefficients;
  double leakage = 0.0;  // 1 - captured norm

  static constexpr double kTrustedLeakage = 1e-3;
  bool trusted() const { return leakage < kTrustedLeakage; }
};

ProjectedMolecularState project_molecular_state(const StateVector& psi, const VibrationalEigensystem& eig1,
                                                const VibrationalEigensystem& eig2, std::size_t n_vib);

/// Photon-traced molecule-molecule state in the projected basis, renormalized
/// to unit trace. dims = {n_vib, n_vib}.
DensityMatrix molecular_density(const ProjectedMolecularState& proj);

/// Transpose on the second factor: (ij, kl) -> (il, kj).
Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho);

/// log2 of the trace norm of the partial transpose, in bits.
double logarithmic_negativity(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);

}  // namespace molcav
