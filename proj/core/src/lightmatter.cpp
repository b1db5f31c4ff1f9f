#include "molcav/lightmatter.hpp"

#include <cmath>
#include <sstream>

#include "molcav/error.hpp"
#include "molcav/units.hpp"

namespace molcav {

MolecularTerms molecular_terms(const GridBasis1D& grid, const SimulationConfig& cfg) {
  return {grid, morse_potential(grid, cfg.morse), mecke_dipole(grid, cfg.mecke, cfg.morse),
          effective_reduced_mass(cfg)};
}

HamiltonianAction::HamiltonianAction(MolecularTerms molecule1, MolecularTerms molecule2, FockBasis photon,
                                     double lambda)
    : m1_(std::move(molecule1)), m2_(std::move(molecule2)), photon_(photon), lambda_(lambda) {
  const std::size_t n1 = m1_.grid.n_points, n2 = m2_.grid.n_points, nf = photon_.n_levels;
  if (m1_.potential.size() != n1 || m1_.dipole.size() != n1 || m2_.potential.size() != n2 ||
      m2_.dipole.size() != n2)
    throw DimensionError("HamiltonianAction: molecular term sizes do not match their grids");
  if (!(photon_.omega > 0.0)) throw std::invalid_argument("HamiltonianAction: omega must be positive");
  if (nf < 2) throw std::invalid_argument("HamiltonianAction: need at least two Fock levels");
  basis_ = CompositeIndex(n1, n2, nf);

  const auto c1 = kinetic_stencil(m1_.grid.spacing);
  const auto c2 = kinetic_stencil(m2_.grid.spacing);
  for (std::size_t k = 0; k <= 4; ++k) {
    hop1_[k] = -0.5 / m1_.reduced_mass * c1[k + 4];
    hop2_[k] = -0.5 / m2_.reduced_mass * c2[k + 4];
  }

  const double w = photon_.omega;
  grid_diag_.resize(n1 * n2);
  coupling_.resize(n1 * n2);
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      const double r = m1_.dipole[i1] + m2_.dipole[i2];
      grid_diag_[i1 * n2 + i2] =
          m1_.potential[i1] + m2_.potential[i2] + hop1_[0] + hop2_[0] + 0.5 * lambda_ * lambda_ * r * r;
      coupling_[i1 * n2 + i2] = -w * lambda_ * r;
    }
  }

  photon_diag_.resize(nf);
  q_off_.resize(nf - 1);
  const auto nfi = static_cast<Eigen::Index>(nf);
  q_ = Eigen::MatrixXd::Zero(nfi, nfi);
  q2_ = Eigen::MatrixXd::Zero(nfi, nfi);
  p2_ = Eigen::MatrixXd::Zero(nfi, nfi);
  for (std::size_t n = 0; n < nf; ++n) {
    const double dn = static_cast<double>(n);
    const auto i = static_cast<Eigen::Index>(n);
    photon_diag_[n] = w * (dn + 0.5);
    q2_(i, i) = (2.0 * dn + 1.0) / (2.0 * w);
    p2_(i, i) = 0.5 * w * (2.0 * dn + 1.0);
    if (n + 1 < nf) {
      q_off_[n] = std::sqrt((dn + 1.0) / (2.0 * w));
      q_(i, i + 1) = q_(i + 1, i) = q_off_[n];
    }
    if (n + 2 < nf) {
      const double s = std::sqrt((dn + 1.0) * (dn + 2.0));
      q2_(i, i + 2) = q2_(i + 2, i) = s / (2.0 * w);
      p2_(i, i + 2) = p2_(i + 2, i) = -0.5 * w * s;
    }
  }

  double off1 = 0.0, off2 = 0.0;
  for (std::size_t k = 1; k <= 4; ++k) {
    off1 += 2.0 * std::abs(hop1_[k]);
    off2 += 2.0 * std::abs(hop2_[k]);
  }
  const double qmax = q_off_.empty() ? 0.0 : 2.0 * q_off_.back();
  double worst = 0.0;
  for (std::size_t g = 0; g < n1 * n2; ++g)
    worst = std::max(worst, std::abs(grid_diag_[g]) + photon_diag_.back() + std::abs(coupling_[g]) * qmax);
  norm_estimate_ = worst + off1 + off2;
}

namespace {

// dst[j] += w * (src[j + off] + src[j - off]) over a row of `len` doubles, with
// either neighbour possibly missing (hard wall).
inline void add_pair(double* __restrict dst, const double* __restrict lo, const double* __restrict hi, double w,
                     std::size_t len) {
  if (lo && hi) {
    for (std::size_t j = 0; j < len; ++j) dst[j] += w * (lo[j] + hi[j]);
  } else if (lo) {
    for (std::size_t j = 0; j < len; ++j) dst[j] += w * lo[j];
  } else if (hi) {
    for (std::size_t j = 0; j < len; ++j) dst[j] += w * hi[j];
  }
}

}  // namespace

void HamiltonianAction::apply(std::span<const Complex> in, std::span<Complex> out) const {
  const std::size_t n1 = basis_.n1(), n2 = basis_.n2(), nf = basis_.nf();
  if (in.size() != basis_.size() || out.size() != basis_.size())
    throw DimensionError("HamiltonianAction::apply: vector size does not match basis");

  const std::size_t row = 2 * nf;              // doubles per (i1, i2) photon row
  const std::size_t slab = n2 * row;           // doubles per i1 slab
  const auto* x = reinterpret_cast<const double*>(in.data());
  auto* y = reinterpret_cast<double*>(out.data());
  const double* pd = photon_diag_.data();
  const double* qo = q_off_.data();
  const auto ln1 = static_cast<std::ptrdiff_t>(n1);
  const auto ln2 = static_cast<std::ptrdiff_t>(n2);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i1 = 0; i1 < ln1; ++i1) {
    for (std::ptrdiff_t i2 = 0; i2 < ln2; ++i2) {
      const std::size_t g = static_cast<std::size_t>(i1) * n2 + static_cast<std::size_t>(i2);
      const std::size_t base = g * row;
      const double* xr = x + base;
      double* __restrict yr = y + base;
      const double dg = grid_diag_[g];
      const double cq = coupling_[g];

      // Diagonal plus bilinear q coupling inside the photon row.
      for (std::size_t n = 0; n < nf; ++n) {
        double re = (dg + pd[n]) * xr[2 * n];
        double im = (dg + pd[n]) * xr[2 * n + 1];
        if (n > 0) {
          re += cq * qo[n - 1] * xr[2 * n - 2];
          im += cq * qo[n - 1] * xr[2 * n - 1];
        }
        if (n + 1 < nf) {
          re += cq * qo[n] * xr[2 * n + 2];
          im += cq * qo[n] * xr[2 * n + 3];
        }
        yr[2 * n] = re;
        yr[2 * n + 1] = im;
      }

      for (std::ptrdiff_t k = 1; k <= 4; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        add_pair(yr, i1 >= k ? xr - ks * slab : nullptr, i1 + k < ln1 ? xr + ks * slab : nullptr, hop1_[ks], row);
        add_pair(yr, i2 >= k ? xr - ks * row : nullptr, i2 + k < ln2 ? xr + ks * row : nullptr, hop2_[ks], row);
      }
    }
  }
}

StateVector HamiltonianAction::apply(const StateVector& psi) const {
  if (!(psi.basis == basis_)) throw DimensionError("HamiltonianAction::apply: state basis mismatch");
  StateVector out(basis_);
  apply(std::span<const Complex>(psi.amplitudes.data(), psi.size()),
        std::span<Complex>(out.amplitudes.data(), out.size()));
  return out;
}

double HamiltonianAction::expectation(const StateVector& psi) const { return inner(psi, apply(psi)).real(); }

EnergyComponents HamiltonianAction::energy_components(const StateVector& psi) const {
  if (!(psi.basis == basis_)) throw DimensionError("energy_components: state basis mismatch");
  const auto n1 = static_cast<Eigen::Index>(basis_.n1());
  const auto n2 = static_cast<Eigen::Index>(basis_.n2());
  const auto nf = static_cast<Eigen::Index>(basis_.nf());
  using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  EnergyComponents e;

  const Eigen::MatrixXd h1 = one_dimensional_hamiltonian(m1_.grid, m1_.potential, m1_.reduced_mass);
  const Eigen::MatrixXd h2 = one_dimensional_hamiltonian(m2_.grid, m2_.potential, m2_.reduced_mass);

  Eigen::Map<const RowMat> by_mol1(psi.amplitudes.data(), n1, n2 * nf);
  e.molecule1 = (by_mol1.conjugate().cwiseProduct(h1 * by_mol1)).sum().real();

  for (Eigen::Index i1 = 0; i1 < n1; ++i1) {
    Eigen::Map<const RowMat> block(psi.amplitudes.data() + i1 * n2 * nf, n2, nf);
    e.molecule2 += (block.conjugate().cwiseProduct(h2 * block)).sum().real();
  }

  const double w = photon_.omega;
  for (Eigen::Index i1 = 0; i1 < n1; ++i1) {
    for (Eigen::Index i2 = 0; i2 < n2; ++i2) {
      Eigen::Map<const Eigen::VectorXcd> c(psi.amplitudes.data() + (i1 * n2 + i2) * nf, nf);
      const double r = m1_.dipole[static_cast<std::size_t>(i1)] + m2_.dipole[static_cast<std::size_t>(i2)];
      e.photon_kinetic += 0.5 * c.dot(p2_ * c).real();
      e.photon_potential += 0.5 * w * w * c.dot(q2_ * c).real();
      e.bilinear += -w * lambda_ * r * c.dot(q_ * c).real();
      e.self_energy += 0.5 * lambda_ * lambda_ * r * r * c.squaredNorm();
    }
  }
  return e;
}

double cavity_frequency(const SimulationConfig& cfg, const VibrationalEigensystem& eig) {
  if (cfg.omega) return *cfg.omega;
  if (eig.count() < 2) throw std::invalid_argument("cavity_frequency: need two vibrational levels");
  return eig.transition_energy(0, 1);
}

HamiltonianAction assemble_hamiltonian(const SimulationConfig& cfg, const VibrationalEigensystem& eig1,
                                       const VibrationalEigensystem& eig2) {
  const double w = cavity_frequency(cfg, eig1);
  HamiltonianAction h(molecular_terms(cfg.grid1, cfg), molecular_terms(cfg.grid2, cfg), FockBasis{cfg.fock.n_levels, w},
                      cfg.lambda);
  for (const auto* eig : {&eig1, &eig2}) {
    if (eig->count() < 2) continue;
    const double w01 = eig->transition_energy(0, 1);
    if (std::abs(w - w01) > 0.1 * w01) {
      std::ostringstream msg;
      msg << "cavity frequency " << units::hartree_to_wavenumber(w) << " cm^-1 is more than 10% off the molecular "
          << "0->1 transition " << units::hartree_to_wavenumber(w01) << " cm^-1";
      h.add_warning(msg.str());
    }
  }
  return h;
}

StateVector apply_hamiltonian(const HamiltonianAction& h, const StateVector& psi) { return h.apply(psi); }

CouplingReport coupling_report(double lambda, double omega, const VibrationalEigensystem& eig,
                               std::span<const double> dipole) {
  if (eig.count() < 2) throw std::invalid_argument("coupling_report: need two vibrational levels");
  CouplingReport r;
  r.lambda = lambda;
  r.omega = omega;
  r.d01 = std::abs(transition_dipole(eig, dipole, 0, 1));
  r.g = lambda * std::sqrt(omega / 2.0) * r.d01;
  r.eta = r.g / omega;
  r.omega01 = units::hartree_to_wavenumber(eig.transition_energy(0, 1));
  return r;
}

CouplingReport coupling_report(const SimulationConfig& cfg, const VibrationalEigensystem& eig) {
  return coupling_report(cfg.lambda, cavity_frequency(cfg, eig), eig, mecke_dipole(eig.grid, cfg.mecke, cfg.morse));
}

Eigen::VectorXcd coherent_amplitudes(Complex beta, std::size_t n_levels) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(n_levels));
  Complex term = std::exp(-0.5 * std::norm(beta));
  for (std::size_t n = 0; n < n_levels; ++n) {
    c(static_cast<Eigen::Index>(n)) = term;
    term *= beta / std::sqrt(static_cast<double>(n + 1));
  }
  return c;
}

StateVector product_state(const Eigen::VectorXd& mol1, const Eigen::VectorXd& mol2, const Eigen::VectorXcd& photon) {
  const CompositeIndex basis(static_cast<std::size_t>(mol1.size()), static_cast<std::size_t>(mol2.size()),
                             static_cast<std::size_t>(photon.size()));
  StateVector psi(basis);
  const Eigen::Index nf = photon.size();
  for (Eigen::Index i1 = 0; i1 < mol1.size(); ++i1)
    for (Eigen::Index i2 = 0; i2 < mol2.size(); ++i2)
      psi.amplitudes.segment((i1 * mol2.size() + i2) * nf, nf) = (mol1(i1) * mol2(i2)) * photon;
  return psi;
}

StateVector initial_state(const SimulationConfig& cfg, const VibrationalEigensystem& eig1,
                          const VibrationalEigensystem& eig2) {
  const double tail = coherent_truncation_error(cfg.beta, cfg.fock.n_levels);
  if (!(tail < kCoherentTruncationLimit)) {
    std::ostringstream msg;
    msg << "fock.n_levels: coherent truncation error " << tail << " exceeds " << kCoherentTruncationLimit;
    throw ConfigError({msg.str()});
  }
  StateVector psi = product_state(eig1.unit_vector(0), eig2.unit_vector(0),
                                  coherent_amplitudes(cfg.beta, cfg.fock.n_levels));
  psi.normalize();
  return psi;
}

}  // namespace molcav
