#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "molcav/error.hpp"
#include "molcav/lightmatter.hpp"
#include "molcav/quantum_info.hpp"
#include "molcav/wigner.hpp"
#include "oracles.hpp"

using namespace molcav;

namespace {

DensityMatrix pure(const std::vector<Complex>& c) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = c[i];
  return DensityMatrix(v * v.adjoint(), {c.size()});
}

DensityMatrix fock(std::size_t n, std::size_t levels) {
  std::vector<Complex> c(levels, 0.0);
  c[n] = 1.0;
  return pure(c);
}

std::vector<Complex> coherent(Complex beta, std::size_t levels) {
  const auto a = coherent_amplitudes(beta, levels).normalized();
  return {a.data(), a.data() + a.size()};
}

}  // namespace

TEST(Wigner, MoyalKernelsMatchDirectIntegral) {
  const std::vector<Complex> c = [] {
    std::vector<Complex> v{{0.5, 0.1}, {-0.3, 0.4}, {0.2, -0.2}, {0.0, 0.35}, {0.25, 0.0}, {-0.1, -0.15}};
    double n = 0.0;
    for (auto x : v) n += std::norm(x);
    for (auto& x : v) x /= std::sqrt(n);
    return v;
  }();
  const auto rho = pure(c);
  for (double x : {-2.1, -0.4, 0.0, 0.73, 1.9})
    for (double y : {-1.7, 0.0, 0.31, 2.2})
      EXPECT_NEAR(wigner_at(rho, x, y), oracle::wigner_integral(c, x, y), 1e-6) << x << ", " << y;
}

TEST(Wigner, CoherentStateMatchesDirectIntegral) {
  const auto c = coherent({1.0, 0.5}, 20);
  const auto rho = pure(c);
  for (double x : {-1.0, 0.5, 1.41, 2.5})
    for (double y : {-0.5, 0.7, 1.6}) EXPECT_NEAR(wigner_at(rho, x, y), oracle::wigner_integral(c, x, y), 1e-6);
  // Peak sits at sqrt(2) (Re beta, Im beta).
  EXPECT_NEAR(wigner_at(rho, std::sqrt(2.0), std::sqrt(2.0) * 0.5), 1.0 / std::numbers::pi, 1e-8);
}

TEST(Wigner, VacuumAndOnePhoton) {
  const auto vac = fock(0, 4);
  for (double x : {0.0, 0.5, -1.3})
    for (double y : {0.0, 0.8}) EXPECT_NEAR(wigner_at(vac, x, y), std::exp(-(x * x + y * y)) / std::numbers::pi, 1e-14);
  const auto one = fock(1, 4);
  EXPECT_NEAR(wigner_at(one, 0.0, 0.0), -1.0 / std::numbers::pi, 1e-14);
  const double r2 = 0.9 * 0.9 + 0.4 * 0.4;
  EXPECT_NEAR(wigner_at(one, 0.9, 0.4), (2.0 * r2 - 1.0) * std::exp(-r2) / std::numbers::pi, 1e-14);
}

TEST(Wigner, FockStatesAtOriginAlternate) {
  for (std::size_t n = 0; n < 25; ++n)
    EXPECT_NEAR(wigner_at(fock(n, 25), 0.0, 0.0), (n % 2 ? -1.0 : 1.0) / std::numbers::pi, 1e-12) << n;
}

TEST(Wigner, DefaultCoherentFieldPeakAndIntegrals) {
  const auto rho = pure(coherent({2.0, 0.0}, 30));
  const PhaseSpaceGrid g{201, 201, 7.0, 7.0};
  const auto w = wigner_from_density(rho, g, 0.0);
  std::size_t best = 0;
  for (std::size_t k = 1; k < w.values.size(); ++k)
    if (w.values[k] > w.values[best]) best = k;
  const double xq = g.q(best / g.p_points), yp = g.p(best % g.p_points);
  EXPECT_NEAR(xq, 2.0 * std::sqrt(2.0), g.dq());
  EXPECT_NEAR(yp, 0.0, g.dp());
  EXPECT_NEAR(w.normalization(), 1.0, 1e-6);
  EXPECT_NEAR(w.purity(), 1.0, 1e-6);
  // The 30-level cut leaves ~1e-8 amplitudes at the top levels; they show up as
  // ~1e-9 ripples far from the peak.
  EXPECT_GT(wigner_negativity(w).min_value, -1e-6);
  EXPECT_LT(wigner_negativity(w).volume, 1e-6);
}

TEST(Wigner, NegativityVolumeOfOnePhoton) {
  const PhaseSpaceGrid g{301, 301, 6.0, 6.0};
  const auto w = wigner_from_density(fock(1, 3), g);
  // Integral of |W| - 1 for |1>: 4 e^{-1/2} - 2.
  EXPECT_NEAR(wigner_negativity(w).volume, 4.0 * std::exp(-0.5) - 2.0, 1e-4);
  EXPECT_NEAR(wigner_negativity(w).min_value, -1.0 / std::numbers::pi, 1e-12);
}

TEST(Wigner, MixedStatePurity) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 0.5;
  m(2, 2) = 0.5;
  const auto w = wigner_from_density(DensityMatrix(m, {3}), PhaseSpaceGrid{201, 201, 7.0, 7.0});
  EXPECT_NEAR(w.normalization(), 1.0, 1e-6);
  EXPECT_NEAR(w.purity(), 0.5, 1e-6);
}

TEST(Wigner, PhotonDensityFromState) {
  const CompositeIndex b(4, 3, 5);
  const StateVector psi(b, oracle::random_vector(b.size(), 3));
  const auto direct = reduced_photon_density(psi);
  EXPECT_LT((direct.elements - reduce_pure_state(psi, Keep::C).elements).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((direct.elements - oracle::brute_reduce(psi, 2)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Wigner, GridMustCoverCoherentState) {
  EXPECT_THROW(check_phase_space_grid(PhaseSpaceGrid{101, 101, 5.0, 5.0}, {2.0, 0.0}), ConfigError);
  EXPECT_NO_THROW(check_phase_space_grid(PhaseSpaceGrid{101, 101, 7.0, 7.0}, {2.0, 0.0}));
}
