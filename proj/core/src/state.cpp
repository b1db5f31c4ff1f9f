#include "molcav/state.hpp"

#include <cmath>

#include "molcav/error.hpp"

namespace molcav {

StateVector::StateVector(const CompositeIndex& b, Eigen::VectorXcd a) : basis(b), amplitudes(std::move(a)) {
  if (static_cast<std::size_t>(amplitudes.size()) != basis.size())
    throw DimensionError("StateVector: amplitude count does not match basis");
}

void StateVector::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw NumericalError("StateVector::normalize: zero or non-finite norm");
  amplitudes /= n;
}

bool StateVector::all_finite() const { return amplitudes.allFinite(); }

double StateVector::photon_number() const {
  const std::size_t nf = basis.nf();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
    sum += static_cast<double>(static_cast<std::size_t>(i) % nf) * std::norm(amplitudes(i));
  return sum;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (!(a.basis == b.basis)) throw DimensionError("inner: basis mismatch");
  return a.amplitudes.dot(b.amplitudes);
}

double fidelity(const StateVector& a, const StateVector& b) { return std::abs(inner(a, b)); }

}  // namespace molcav
