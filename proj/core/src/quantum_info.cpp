#include "molcav/quantum_info.hpp"

#include <cmath>
#include <sstream>

#include "molcav/error.hpp"

namespace molcav {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m, std::vector<std::size_t> d) : elements(std::move(m)), dims(std::move(d)) {
  std::size_t prod = 1;
  for (auto x : dims) prod *= x;
  if (elements.rows() != elements.cols() || prod != static_cast<std::size_t>(elements.rows()))
    throw DimensionError("DensityMatrix: subsystem dims do not match matrix size");
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  const Eigen::MatrixXcd herm = 0.5 * (elements + elements.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("DensityMatrix: eigensolver failed");
  return es.eigenvalues();
}

namespace {

using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

DensityMatrix reduce_pure_state(const StateVector& psi, Keep keep) {
  const auto n1 = static_cast<Eigen::Index>(psi.basis.n1());
  const auto n2 = static_cast<Eigen::Index>(psi.basis.n2());
  const auto nf = static_cast<Eigen::Index>(psi.basis.nf());
  const Complex* data = psi.amplitudes.data();

  // Kept-major layouts that are already contiguous need no copy.
  switch (keep) {
    case Keep::A: {
      Eigen::Map<const RowMat> m(data, n1, n2 * nf);
      return {m * m.adjoint(), {psi.basis.n1()}};
    }
    case Keep::AB: {
      Eigen::Map<const RowMat> m(data, n1 * n2, nf);
      return {m * m.adjoint(), {psi.basis.n1(), psi.basis.n2()}};
    }
    case Keep::C: {
      Eigen::Map<const RowMat> m(data, n1 * n2, nf);
      return {m.transpose() * m.conjugate(), {psi.basis.nf()}};
    }
    case Keep::BC: {
      Eigen::Map<const RowMat> m(data, n1, n2 * nf);
      return {m.transpose() * m.conjugate(), {psi.basis.n2(), psi.basis.nf()}};
    }
    case Keep::B: {
      // Rows i2, columns (i1, n).
      RowMat m(n2, n1 * nf);
      for (Eigen::Index i1 = 0; i1 < n1; ++i1)
        for (Eigen::Index i2 = 0; i2 < n2; ++i2)
          m.row(i2).segment(i1 * nf, nf) = Eigen::Map<const Eigen::RowVectorXcd>(data + (i1 * n2 + i2) * nf, nf);
      return {m * m.adjoint(), {psi.basis.n2()}};
    }
    case Keep::AC: {
      // Rows (i1, n), columns i2.
      RowMat m(n1 * nf, n2);
      for (Eigen::Index i1 = 0; i1 < n1; ++i1)
        for (Eigen::Index i2 = 0; i2 < n2; ++i2)
          for (Eigen::Index n = 0; n < nf; ++n) m(i1 * nf + n, i2) = data[(i1 * n2 + i2) * nf + n];
      return {m * m.adjoint(), {psi.basis.n1(), psi.basis.nf()}};
    }
  }
  throw std::invalid_argument("reduce_pure_state: invalid subsystem selector");
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd ev = rho.eigenvalues();
  double s = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    const double l = ev(k);
    if (l < -kEigenvalueDust) {
      std::ostringstream msg;
      msg << "von_neumann_entropy: eigenvalue " << l << " below -" << kEigenvalueDust << " (not a valid state)";
      throw NumericalError(msg.str());
    }
    if (l > 0.0) s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}

BipartitionEntropies entropies_of_three_bipartitions(const StateVector& psi) {
  return {von_neumann_entropy(reduce_pure_state(psi, Keep::A)), von_neumann_entropy(reduce_pure_state(psi, Keep::B)),
          von_neumann_entropy(reduce_pure_state(psi, Keep::C))};
}

ProjectedMolecularState project_molecular_state(const StateVector& psi, const VibrationalEigensystem& eig1,
                                                const VibrationalEigensystem& eig2, std::size_t n_vib) {
  if (n_vib == 0 || n_vib > eig1.count() || n_vib > eig2.count())
    throw std::invalid_argument("project_molecular_state: n_vib exceeds the available eigenstates");
  if (eig1.grid.n_points != psi.basis.n1() || eig2.grid.n_points != psi.basis.n2())
    throw DimensionError("project_molecular_state: eigensystem grids do not match the state");
  const auto n1 = static_cast<Eigen::Index>(psi.basis.n1());
  const auto n2 = static_cast<Eigen::Index>(psi.basis.n2());
  const auto nf = static_cast<Eigen::Index>(psi.basis.nf());
  const auto k = static_cast<Eigen::Index>(n_vib);

  Eigen::MatrixXd u1(n1, k), u2(n2, k);
  for (Eigen::Index s = 0; s < k; ++s) {
    u1.col(s) = eig1.unit_vector(static_cast<std::size_t>(s));
    u2.col(s) = eig2.unit_vector(static_cast<std::size_t>(s));
  }

  // Contract molecule 1: X[i, (i2, n)] = sum_i1 u1(i1, i) psi[i1, (i2, n)].
  Eigen::Map<const RowMat> m(psi.amplitudes.data(), n1, n2 * nf);
  const RowMat x = u1.transpose().cast<Complex>() * m;

  // Contract molecule 2 row by row: Y[i][j, n] = sum_i2 u2(i2, j) X[i][i2, n].
  ProjectedMolecularState out;
  out.n_vib = n_vib;
  out.nf = psi.basis.nf();
  out.coefficients.resize(k * k, nf);
  const Eigen::MatrixXcd u2t = u2.transpose().cast<Complex>();
  for (Eigen::Index i = 0; i < k; ++i) {
    Eigen::Map<const RowMat> xi(x.data() + i * n2 * nf, n2, nf);
    out.coefficients.middleRows(i * k, k) = u2t * xi;
  }
  out.leakage = std::max(0.0, psi.amplitudes.squaredNorm() - out.coefficients.squaredNorm());
  return out;
}

DensityMatrix molecular_density(const ProjectedMolecularState& proj) {
  Eigen::MatrixXcd rho = proj.coefficients * proj.coefficients.adjoint();
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw NumericalError("molecular_density: projected state has zero weight");
  rho /= tr;
  return {std::move(rho), {proj.n_vib, proj.n_vib}};
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho) {
  if (rho.dims.size() != 2) throw DimensionError("partial_transpose: need a bipartite density matrix");
  const auto da = static_cast<Eigen::Index>(rho.dims[0]);
  const auto db = static_cast<Eigen::Index>(rho.dims[1]);
  if (da * db != rho.elements.rows()) throw DimensionError("partial_transpose: dims product mismatch");
  Eigen::MatrixXcd out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k)
        for (Eigen::Index l = 0; l < db; ++l) out(i * db + j, k * db + l) = rho.elements(i * db + l, k * db + j);
  return out;
}

double logarithmic_negativity(const DensityMatrix& rho) {
  const Eigen::MatrixXcd pt = partial_transpose(rho);
  const Eigen::MatrixXcd herm = 0.5 * (pt + pt.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("logarithmic_negativity: eigensolver failed");
  const double trace_norm = es.eigenvalues().cwiseAbs().sum();
  const double en = std::log2(trace_norm);
  return en < 0.0 && en > -1e-10 ? 0.0 : en;
}

double purity(const DensityMatrix& rho) { return rho.elements.cwiseAbs2().sum(); }

}  // namespace molcav
