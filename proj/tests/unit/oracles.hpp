#pragma once

// Independent reference constructions for the unit tests: dense matrices built
// from first principles, brute-force index loops and direct integrals.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "molcav/state.hpp"

namespace oracle {

using Complex = std::complex<double>;

// Second-derivative weights on offsets -4..4 from the Taylor moment system
// sum_k c_k k^j / j! = delta_{j2}, j = 0..8.
inline std::vector<double> stencil_weights() {
  Eigen::MatrixXd m(9, 9);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(9);
  for (int j = 0; j < 9; ++j) {
    for (int k = -4; k <= 4; ++k) m(j, k + 4) = std::pow(static_cast<double>(k), j) / std::tgamma(j + 1.0);
  }
  rhs(2) = 1.0;
  const Eigen::VectorXd c = m.fullPivLu().solve(rhs);
  return {c.data(), c.data() + 9};
}

// -1/(2 mu) d^2/dx^2 + V with hard walls, on n points.
inline Eigen::MatrixXd dense_h1(const std::vector<double>& v, double dx, double mu) {
  const auto c = stencil_weights();
  const int n = static_cast<int>(v.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) += v[static_cast<std::size_t>(i)];
    for (int k = -4; k <= 4; ++k) {
      const int j = i + k;
      if (j >= 0 && j < n) h(i, j) += -c[static_cast<std::size_t>(k + 4)] / (2.0 * mu * dx * dx);
    }
  }
  return h;
}

inline Eigen::MatrixXd annihilation(int nf) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nf, nf);
  for (int n = 1; n < nf; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

struct Molecule {
  std::vector<double> r, v, dipole;
  double dx = 0.1;
  double mu = 1.0;
};

inline Molecule morse_molecule(int n, double dx, double origin, double mu) {
  Molecule m;
  m.dx = dx;
  m.mu = mu;
  for (int i = 0; i < n; ++i) {
    const double r = origin + dx * i;
    m.r.push_back(r);
    const double e = std::exp(-1.189 * (r - 1.821)) - 1.0;
    m.v.push_back(0.1994 * e * e);
    m.dipole.push_back(-1.634 * r * std::exp(-0.8818 * r));
  }
  return m;
}

// Full H = H1 + H2 + omega(a^dag a + 1/2) - omega lambda R q + lambda^2 R^2 / 2, R = R1 + R2,
// ordered (i1, i2, n) with n fastest.
inline Eigen::MatrixXd dense_hamiltonian(const Molecule& m1, const Molecule& m2, int nf, double omega, double lambda) {
  const int n1 = static_cast<int>(m1.v.size()), n2 = static_cast<int>(m2.v.size());
  const Eigen::MatrixXd i1 = Eigen::MatrixXd::Identity(n1, n1), i2 = Eigen::MatrixXd::Identity(n2, n2);
  const Eigen::MatrixXd iff = Eigen::MatrixXd::Identity(nf, nf);
  const Eigen::MatrixXd a = annihilation(nf);
  const Eigen::MatrixXd q = (a + a.transpose()) / std::sqrt(2.0 * omega);
  const Eigen::MatrixXd hph = omega * (a.transpose() * a + 0.5 * iff);

  Eigen::MatrixXd r1 = Eigen::MatrixXd::Zero(n1, n1), r2 = Eigen::MatrixXd::Zero(n2, n2);
  for (int i = 0; i < n1; ++i) r1(i, i) = m1.dipole[static_cast<std::size_t>(i)];
  for (int i = 0; i < n2; ++i) r2(i, i) = m2.dipole[static_cast<std::size_t>(i)];
  const Eigen::MatrixXd rtot = Eigen::kroneckerProduct(r1, i2).eval() + Eigen::kroneckerProduct(i1, r2).eval();

  Eigen::MatrixXd h = Eigen::kroneckerProduct(Eigen::kroneckerProduct(dense_h1(m1.v, m1.dx, m1.mu), i2).eval(), iff);
  h += Eigen::kroneckerProduct(Eigen::kroneckerProduct(i1, dense_h1(m2.v, m2.dx, m2.mu)).eval(), iff);
  h += Eigen::kroneckerProduct(Eigen::kroneckerProduct(i1, i2).eval(), hph);
  h += -omega * lambda * Eigen::kroneckerProduct(rtot, q);
  h += 0.5 * lambda * lambda * Eigen::kroneckerProduct((rtot * rtot).eval(), iff);
  return h;
}

// exp(-i H t) from the Hermitian eigendecomposition.
inline Eigen::MatrixXcd dense_propagator(const Eigen::MatrixXd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::VectorXcd phase(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phase(k) = std::exp(Complex(0.0, -t * es.eigenvalues()(k)));
  const Eigen::MatrixXcd v = es.eigenvectors().cast<Complex>();
  return v * phase.asDiagonal() * v.adjoint();
}

inline Eigen::VectorXcd random_vector(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(gen), g(gen));
  return v.normalized();
}

inline Eigen::MatrixXcd random_unitary(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(gen), g(gen));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  return qr.householderQ();
}

// Reduced density matrices by explicit summation over the traced indices.
// keep: 0 = A, 1 = B, 2 = C, 3 = AB.
inline Eigen::MatrixXcd brute_reduce(const molcav::StateVector& psi, int keep) {
  const int n1 = static_cast<int>(psi.basis.n1()), n2 = static_cast<int>(psi.basis.n2()),
            nf = static_cast<int>(psi.basis.nf());
  auto amp = [&](int a, int b, int c) {
    return psi(static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(c));
  };
  if (keep == 0) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n1, n1);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j)
        for (int b = 0; b < n2; ++b)
          for (int c = 0; c < nf; ++c) r(i, j) += amp(i, b, c) * std::conj(amp(j, b, c));
    return r;
  }
  if (keep == 1) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n2, n2);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        for (int a = 0; a < n1; ++a)
          for (int c = 0; c < nf; ++c) r(i, j) += amp(a, i, c) * std::conj(amp(a, j, c));
    return r;
  }
  if (keep == 2) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(nf, nf);
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j)
        for (int a = 0; a < n1; ++a)
          for (int b = 0; b < n2; ++b) r(i, j) += amp(a, b, i) * std::conj(amp(a, b, j));
    return r;
  }
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n1 * n2, n1 * n2);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      for (int a2 = 0; a2 < n1; ++a2)
        for (int b2 = 0; b2 < n2; ++b2)
          for (int c = 0; c < nf; ++c) r(a * n2 + b, a2 * n2 + b2) += amp(a, b, c) * std::conj(amp(a2, b2, c));
  return r;
}

// Entropy in bits from a dense Hermitian matrix, eigenvalues below 1e-14 dropped.
inline double entropy_bits(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-14) s -= p * std::log2(p);
  }
  return s;
}

// Partial transpose on the second factor by explicit index swap.
inline Eigen::MatrixXcd brute_partial_transpose(const Eigen::MatrixXcd& rho, int da, int db) {
  Eigen::MatrixXcd out(rho.rows(), rho.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) out(i * db + j, k * db + l) = rho(i * db + l, k * db + j);
  return out;
}

inline double log_negativity_bits(const Eigen::MatrixXcd& rho, int da, int db) {
  const Eigen::MatrixXcd pt = brute_partial_transpose(rho, da, db);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt);
  return std::log2(es.eigenvalues().cwiseAbs().sum());
}

// Normalized Hermite function psi_n(x) for the unit harmonic oscillator.
inline double hermite_function(int n, double x) {
  double p0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return p0;
  double p1 = std::sqrt(2.0) * x * p0;
  for (int k = 2; k <= n; ++k) {
    const double p2 = std::sqrt(2.0 / k) * x * p1 - std::sqrt((k - 1.0) / k) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// W(x, y) = (1/pi) int dz psi*(x + z) psi(x - z) e^{2 i y z} for the pure state
// sum_n c_n |n>, dimensionless units; trapezoid rule on [-L, L].
inline double wigner_integral(const std::vector<Complex>& c, double x, double y) {
  auto psi = [&](double s) {
    Complex v = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) v += c[n] * hermite_function(static_cast<int>(n), s);
    return v;
  };
  const double L = 12.0;
  const int steps = 4000;
  const double h = 2.0 * L / steps;
  Complex acc = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double z = -L + h * k;
    const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
    acc += w * std::conj(psi(x + z)) * psi(x - z) * std::exp(Complex(0.0, 2.0 * y * z));
  }
  return (acc * h).real() / M_PI;
}

}  // namespace oracle
