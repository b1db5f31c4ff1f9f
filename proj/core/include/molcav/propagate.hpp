#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "molcav/lightmatter.hpp"
#include "molcav/state.hpp"

namespace molcav {

struct PropagatorSettings {
  double dt = 20.0;  // atomic time units; negative steps propagate backwards
  /// Largest Krylov dimension; the basis stops growing once the error estimate meets `tolerance`.
  std::size_t krylov_dim = 40;
  /// Target for the a posteriori Krylov error estimate of one step.
  double tolerance = 1e-12;
  /// Extra Gram-Schmidt pass against the whole basis. Costs O(m^2 N) per step.
  bool full_reorthogonalization = false;
  /// Step halvings allowed before a step is declared failed.
  std::size_t max_halvings = 16;
};

struct StepReport {
  std::size_t substeps = 0;
  std::size_t halvings = 0;
  std::size_t krylov_used = 0;  // largest Krylov dimension used by a substep
  double error_estimate = 0.0;  // sum over substeps
  bool happy_breakdown = false;
};

/// Lanczos short-iterate exponential exp(-i H dt) psi for a time-independent H.
/// Owns its Krylov workspace; one propagator per trajectory.
class KrylovPropagator {
 public:
  KrylovPropagator(const HamiltonianAction& h, PropagatorSettings settings);

  const PropagatorSettings& settings() const { return settings_; }

  /// Advances psi in place by settings().dt.
  StepReport step(StateVector& psi);
  /// Advances psi in place by dt (may differ in sign or size from the default).
  StepReport step(StateVector& psi, double dt);

 private:
  /// Grows the Krylov space of `start` until the estimate for `tau` meets the
  /// tolerance, breakdown, or krylov_dim. Returns the dimension; `error` is its estimate.
  std::size_t build_krylov(const Eigen::VectorXcd& start, double tau, bool& breakdown, double& error);
  /// exp(-i tau T) e1 in the current Krylov space; sets the error estimate.
  Eigen::VectorXcd small_exponential(std::size_t m, double tau, double& error) const;

  const HamiltonianAction& h_;
  PropagatorSettings settings_;
  Eigen::MatrixXcd v_;  // Lanczos basis, one column per vector
  Eigen::VectorXcd w_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  double start_norm_ = 0.0;
};

StateVector krylov_step(const HamiltonianAction& h, const StateVector& psi, const PropagatorSettings& settings);

}  // namespace molcav
