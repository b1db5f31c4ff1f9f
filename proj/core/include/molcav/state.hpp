#pragma once

#include <complex>

#include <Eigen/Dense>

#include "molcav/basis.hpp"

namespace molcav {

using Complex = std::complex<double>;

/// Amplitudes over the flattened grid x grid x Fock product basis, normalized
/// in the plain discrete 2-norm.
struct StateVector {
  CompositeIndex basis;
  Eigen::VectorXcd amplitudes;

  StateVector() = default;
  explicit StateVector(const CompositeIndex& b) : basis(b), amplitudes(Eigen::VectorXcd::Zero(b.size())) {}
  StateVector(const CompositeIndex& b, Eigen::VectorXcd a);

  std::size_t size() const { return static_cast<std::size_t>(amplitudes.size()); }
  Complex& operator()(std::size_t i1, std::size_t i2, std::size_t n) {
    return amplitudes(static_cast<Eigen::Index>(basis.flatten(i1, i2, n)));
  }
  const Complex& operator()(std::size_t i1, std::size_t i2, std::size_t n) const {
    return amplitudes(static_cast<Eigen::Index>(basis.flatten(i1, i2, n)));
  }
  double norm() const { return amplitudes.norm(); }
  void normalize();
  bool all_finite() const;

  /// Mean photon number sum_n n |psi_n|^2.
  double photon_number() const;
};

/// <a|b>
Complex inner(const StateVector& a, const StateVector& b);
/// |<a|b>| for unit vectors.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace molcav
