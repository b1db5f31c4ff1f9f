#include <gtest/gtest.h>

#include <cmath>

#include "molcav/error.hpp"
#include "molcav/lightmatter.hpp"
#include "molcav/matter.hpp"
#include "molcav/quantum_info.hpp"
#include "toy_system.hpp"

using namespace molcav;

namespace {

StateVector random_state(std::size_t n1, std::size_t n2, std::size_t nf, unsigned seed) {
  const CompositeIndex b(n1, n2, nf);
  return {b, oracle::random_vector(b.size(), seed)};
}

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd bell_pair() {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
  return rho;
}

}  // namespace

TEST(QuantumInfo, PartialTracesMatchBruteForce) {
  const auto psi = random_state(6, 6, 4, 1);
  EXPECT_LT(max_diff(reduce_pure_state(psi, Keep::A).elements, oracle::brute_reduce(psi, 0)), 1e-10);
  EXPECT_LT(max_diff(reduce_pure_state(psi, Keep::B).elements, oracle::brute_reduce(psi, 1)), 1e-10);
  EXPECT_LT(max_diff(reduce_pure_state(psi, Keep::C).elements, oracle::brute_reduce(psi, 2)), 1e-10);
  EXPECT_LT(max_diff(reduce_pure_state(psi, Keep::AB).elements, oracle::brute_reduce(psi, 3)), 1e-10);
}

TEST(QuantumInfo, PartialTracesOnUnequalDims) {
  const auto psi = random_state(3, 5, 4, 2);
  const auto a = reduce_pure_state(psi, Keep::A);
  EXPECT_EQ(a.dims, (std::vector<std::size_t>{3}));
  EXPECT_LT(max_diff(a.elements, oracle::brute_reduce(psi, 0)), 1e-12);
  EXPECT_LT(max_diff(reduce_pure_state(psi, Keep::B).elements, oracle::brute_reduce(psi, 1)), 1e-12);
  EXPECT_LT(max_diff(reduce_pure_state(psi, Keep::C).elements, oracle::brute_reduce(psi, 2)), 1e-12);
  const auto ab = reduce_pure_state(psi, Keep::AB);
  EXPECT_EQ(ab.dims, (std::vector<std::size_t>{3, 5}));
  EXPECT_LT(max_diff(ab.elements, oracle::brute_reduce(psi, 3)), 1e-12);
  EXPECT_NEAR(reduce_pure_state(psi, Keep::AC).trace().real(), 1.0, 1e-12);
  EXPECT_NEAR(reduce_pure_state(psi, Keep::BC).trace().real(), 1.0, 1e-12);
}

TEST(QuantumInfo, EntropyMatchesDenseEigen) {
  const auto psi = random_state(6, 6, 4, 3);
  const auto e = entropies_of_three_bipartitions(psi);
  EXPECT_NEAR(e.a_bc, oracle::entropy_bits(oracle::brute_reduce(psi, 0)), 1e-10);
  EXPECT_NEAR(e.b_ac, oracle::entropy_bits(oracle::brute_reduce(psi, 1)), 1e-10);
  EXPECT_NEAR(e.c_ab, oracle::entropy_bits(oracle::brute_reduce(psi, 2)), 1e-10);
}

TEST(QuantumInfo, ComplementaryEntropiesAgree) {
  const auto psi = random_state(5, 4, 7, 4);
  const double sa = von_neumann_entropy(reduce_pure_state(psi, Keep::A));
  const double sb = von_neumann_entropy(reduce_pure_state(psi, Keep::B));
  const double sc = von_neumann_entropy(reduce_pure_state(psi, Keep::C));
  EXPECT_NEAR(sa, von_neumann_entropy(reduce_pure_state(psi, Keep::BC)), 1e-9);
  EXPECT_NEAR(sb, von_neumann_entropy(reduce_pure_state(psi, Keep::AC)), 1e-9);
  EXPECT_NEAR(sc, von_neumann_entropy(reduce_pure_state(psi, Keep::AB)), 1e-9);
}

TEST(QuantumInfo, BellStateHasOneBit) {
  StateVector psi(CompositeIndex(2, 2, 1));
  psi(0, 0, 0) = psi(1, 1, 0) = 1.0 / std::sqrt(2.0);
  const auto ra = reduce_pure_state(psi, Keep::A);
  const auto ev = ra.eigenvalues();
  EXPECT_NEAR(ev(0), 0.5, 1e-15);
  EXPECT_NEAR(ev(1), 0.5, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(ra), 1.0, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(reduce_pure_state(psi, Keep::C)), 0.0, 1e-14);
  EXPECT_NEAR(logarithmic_negativity(DensityMatrix(bell_pair(), {2, 2})), 1.0, 1e-12);
}

TEST(QuantumInfo, ProductStateHasZeroEntropyAndNegativity) {
  Eigen::VectorXd a = Eigen::VectorXd::Random(5).normalized(), b = Eigen::VectorXd::Random(4).normalized();
  Eigen::VectorXcd c = Eigen::VectorXcd::Random(3).normalized();
  const auto psi = product_state(a, b, c);
  const auto e = entropies_of_three_bipartitions(psi);
  EXPECT_LT(e.a_bc, 1e-12);
  EXPECT_LT(e.b_ac, 1e-12);
  EXPECT_LT(e.c_ab, 1e-12);
  EXPECT_NEAR(logarithmic_negativity(reduce_pure_state(psi, Keep::AB)), 0.0, 1e-12);
  EXPECT_NEAR(purity(reduce_pure_state(psi, Keep::AB)), 1.0, 1e-12);
}

TEST(QuantumInfo, WernerStateNegativity) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const DensityMatrix rho(p * bell_pair() + (1.0 - p) * id, {2, 2});
    const double expected = p > 1.0 / 3.0 ? std::log2((1.0 + 3.0 * p) / 2.0) : 0.0;
    EXPECT_NEAR(logarithmic_negativity(rho), expected, 1e-12) << "p = " << p;
    EXPECT_NEAR(purity(rho), (1.0 + 3.0 * p * p) / 4.0, 1e-12);
  }
}

TEST(QuantumInfo, PartialTransposeMatchesIndexSwap) {
  const int da = 3, db = 4;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(12, 12);
  m = m * m.adjoint();
  m /= m.trace();
  const DensityMatrix rho(m, {3, 4});
  EXPECT_LT(max_diff(partial_transpose(rho), oracle::brute_partial_transpose(m, da, db)), 1e-15);
  EXPECT_NEAR(logarithmic_negativity(rho), oracle::log_negativity_bits(m, da, db), 1e-10);
}

TEST(QuantumInfo, NegativityOfToyReducedStateMatchesDense) {
  const auto psi = random_state(6, 6, 4, 5);
  const Eigen::MatrixXcd rho = oracle::brute_reduce(psi, 3);
  EXPECT_NEAR(logarithmic_negativity(reduce_pure_state(psi, Keep::AB)), oracle::log_negativity_bits(rho, 6, 6), 1e-10);
}

TEST(QuantumInfo, LocalUnitariesLeaveEntropiesUnchanged) {
  auto psi = random_state(6, 5, 4, 6);
  const auto before = entropies_of_three_bipartitions(psi);
  const double neg_before = logarithmic_negativity(reduce_pure_state(psi, Keep::AB));
  const Eigen::MatrixXcd u = oracle::random_unitary(6, 7);
  const Eigen::MatrixXcd w = oracle::random_unitary(4, 8);
  StateVector rotated(psi.basis);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 5; ++b)
      for (int n = 0; n < 4; ++n) {
        Complex acc = 0.0;
        for (int a2 = 0; a2 < 6; ++a2)
          for (int n2 = 0; n2 < 4; ++n2) acc += u(a, a2) * w(n, n2) * psi(a2, b, n2);
        rotated(a, b, n) = acc;
      }
  const auto after = entropies_of_three_bipartitions(rotated);
  EXPECT_NEAR(after.a_bc, before.a_bc, 1e-10);
  EXPECT_NEAR(after.b_ac, before.b_ac, 1e-10);
  EXPECT_NEAR(after.c_ab, before.c_ab, 1e-10);
  EXPECT_NEAR(logarithmic_negativity(reduce_pure_state(rotated, Keep::AB)), neg_before, 1e-10);
}

TEST(QuantumInfo, DustClippedButRealNegativityThrows) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 1.0 + 1e-10;
  m(1, 1) = -1e-10;
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(m, {2})), 0.0, 1e-8);
  m(0, 0) = 1.1;
  m(1, 1) = -0.1;
  EXPECT_THROW(von_neumann_entropy(DensityMatrix(m, {2})), NumericalError);
}

TEST(QuantumInfo, CompleteProjectionReproducesDirectReduction) {
  const double mu = toy::reduced_mass();
  const GridBasis1D g1{8, 0.3, 1.2}, g2{8, 0.27, 1.25};
  const auto e1 = solve_bound_states(g1, morse_potential(g1, MorseParams{}), mu, 8, 1e9);
  const auto e2 = solve_bound_states(g2, morse_potential(g2, MorseParams{}), mu, 8, 1e9);
  const auto psi = random_state(8, 8, 4, 9);
  const auto proj = project_molecular_state(psi, e1, e2, 8);
  EXPECT_NEAR(proj.leakage, 0.0, 1e-12);
  EXPECT_TRUE(proj.trusted());

  Eigen::MatrixXd u1(8, 8), u2(8, 8);
  for (int k = 0; k < 8; ++k) {
    u1.col(k) = e1.unit_vector(static_cast<std::size_t>(k));
    u2.col(k) = e2.unit_vector(static_cast<std::size_t>(k));
  }
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int n = 0; n < 4; ++n) {
        Complex c = 0.0;
        for (int a = 0; a < 8; ++a)
          for (int b = 0; b < 8; ++b) c += u1(a, i) * u2(b, j) * psi(a, b, n);
        EXPECT_LT(std::abs(proj.coefficients(i * 8 + j, n) - c), 1e-12);
      }

  const Eigen::MatrixXcd u = Eigen::kroneckerProduct(u1, u2).eval().cast<Complex>();
  const Eigen::MatrixXcd direct = u.adjoint() * oracle::brute_reduce(psi, 3) * u;
  const auto rho = molecular_density(proj);
  EXPECT_LT(max_diff(rho.elements, direct), 1e-12);
  EXPECT_NEAR(logarithmic_negativity(rho), oracle::log_negativity_bits(oracle::brute_reduce(psi, 3), 8, 8), 1e-10);
}

TEST(QuantumInfo, LeakageFlagsStatesOutsideProjection) {
  const double mu = toy::reduced_mass();
  const GridBasis1D g{40, 0.1, 1.2};
  const auto eig = solve_bound_states(g, morse_potential(g, MorseParams{}), mu, 6);
  const Eigen::VectorXd out = eig.unit_vector(5);
  const Eigen::VectorXd in = eig.unit_vector(0);
  const auto psi = product_state((in + out).normalized(), in, Eigen::VectorXcd::Unit(2, 0));
  const auto proj = project_molecular_state(psi, eig, eig, 3);
  EXPECT_NEAR(proj.leakage, 0.5, 1e-10);
  EXPECT_FALSE(proj.trusted());
  EXPECT_THROW(project_molecular_state(psi, eig, eig, 7), std::invalid_argument);
}
