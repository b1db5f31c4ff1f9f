#include "molcav/propagate.hpp"

#include <cmath>
#include <sstream>

#include "molcav/error.hpp"

namespace molcav {

KrylovPropagator::KrylovPropagator(const HamiltonianAction& h, PropagatorSettings settings)
    : h_(h), settings_(settings) {
  if (settings_.krylov_dim < 2) throw std::invalid_argument("KrylovPropagator: krylov_dim must be at least 2");
  if (!(settings_.tolerance > 0.0)) throw std::invalid_argument("KrylovPropagator: tolerance must be positive");
  const auto n = static_cast<Eigen::Index>(h_.basis().size());
  v_ = Eigen::MatrixXcd::Zero(n, static_cast<Eigen::Index>(settings_.krylov_dim + 1));
  w_ = Eigen::VectorXcd::Zero(n);
  alpha_.assign(settings_.krylov_dim, 0.0);
  beta_.assign(settings_.krylov_dim, 0.0);
}

std::size_t KrylovPropagator::build_krylov(const Eigen::VectorXcd& start, double tau, bool& breakdown,
                                           double& error) {
  const std::size_t m = settings_.krylov_dim;
  const auto n = h_.basis().size();
  start_norm_ = start.norm();
  if (!(start_norm_ > 0.0) || !std::isfinite(start_norm_)) throw NumericalError("Krylov: zero or non-finite start vector");
  v_.col(0) = start / start_norm_;
  breakdown = false;
  error = 0.0;
  const double scale = std::max(h_.norm_estimate(), 1.0);

  for (std::size_t j = 0; j < m; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    h_.apply(std::span<const Complex>(v_.col(jj).data(), n), std::span<Complex>(w_.data(), n));
    const double a = v_.col(jj).dot(w_).real();
    w_ -= a * v_.col(jj);
    if (j > 0) w_ -= beta_[j - 1] * v_.col(jj - 1);
    if (settings_.full_reorthogonalization) {
      // one classical Gram-Schmidt pass against the whole basis
      const Eigen::VectorXcd c = v_.leftCols(jj + 1).adjoint() * w_;
      w_.noalias() -= v_.leftCols(jj + 1) * c;
    }
    alpha_[j] = a;
    const double b = w_.norm();
    beta_[j] = b;
    if (b < 1e-13 * scale) {
      breakdown = true;
      return j + 1;
    }
    v_.col(jj + 1) = w_ / b;
    if (j + 1 >= 2) {
      small_exponential(j + 1, tau, error);
      if (error <= settings_.tolerance) return j + 1;
    }
  }
  return m;
}

Eigen::VectorXcd KrylovPropagator::small_exponential(std::size_t m, double tau, double& error) const {
  const auto mi = static_cast<Eigen::Index>(m);
  Eigen::VectorXd diag(mi), sub(std::max<Eigen::Index>(mi - 1, 0));
  for (Eigen::Index i = 0; i < mi; ++i) diag(i) = alpha_[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < mi; ++i) sub(i) = beta_[static_cast<std::size_t>(i)];
  Eigen::VectorXcd y(mi);
  if (mi == 1) {
    y(0) = std::exp(Complex(0.0, -tau * diag(0)));
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericalError("Krylov: tridiagonal eigensolver failed");
    const Eigen::MatrixXd& q = es.eigenvectors();
    Eigen::VectorXcd phase(mi);
    for (Eigen::Index k = 0; k < mi; ++k) phase(k) = std::exp(Complex(0.0, -tau * es.eigenvalues()(k))) * q(0, k);
    y = q.cast<Complex>() * phase;
  }
  error = beta_[static_cast<std::size_t>(mi - 1)] * std::abs(y(mi - 1)) * start_norm_;
  return y;
}

StepReport KrylovPropagator::step(StateVector& psi) { return step(psi, settings_.dt); }

StepReport KrylovPropagator::step(StateVector& psi, double dt) {
  if (!(psi.basis == h_.basis())) throw DimensionError("KrylovPropagator::step: state basis mismatch");
  StepReport report;
  double remaining = dt;
  const double min_tau = std::abs(dt) / std::ldexp(1.0, static_cast<int>(settings_.max_halvings));

  while (std::abs(remaining) > 1e-15 * std::abs(dt)) {
    double tau = remaining;
    bool breakdown = false;
    double err = 0.0;
    const std::size_t m = build_krylov(psi.amplitudes, tau, breakdown, err);
    report.krylov_used = std::max(report.krylov_used, m);
    report.happy_breakdown = report.happy_breakdown || breakdown;

    Eigen::VectorXcd y = small_exponential(m, tau, err);
    if (breakdown) err = 0.0;
    while (err > settings_.tolerance) {
      tau *= 0.5;
      ++report.halvings;
      if (std::abs(tau) < min_tau) {
        std::ostringstream msg;
        msg << "Krylov step failed: error estimate " << err << " above tolerance " << settings_.tolerance
            << " after " << report.halvings << " halvings (krylov_dim " << settings_.krylov_dim << ")";
        throw NumericalError(msg.str());
      }
      y = small_exponential(m, tau, err);
    }

    psi.amplitudes.noalias() = v_.leftCols(static_cast<Eigen::Index>(m)) * (start_norm_ * y);
    remaining -= tau;
    report.error_estimate += err;
    ++report.substeps;
  }
  return report;
}

StateVector krylov_step(const HamiltonianAction& h, const StateVector& psi, const PropagatorSettings& settings) {
  KrylovPropagator prop(h, settings);
  StateVector out = psi;
  prop.step(out);
  return out;
}

}  // namespace molcav
