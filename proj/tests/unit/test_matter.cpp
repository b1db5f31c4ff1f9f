#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "molcav/config.hpp"
#include "molcav/error.hpp"
#include "molcav/matter.hpp"
#include "molcav/units.hpp"
#include "oracles.hpp"

using namespace molcav;

namespace {

const double kMu = effective_reduced_mass(SimulationConfig{});

double cm(double eh) { return units::hartree_to_wavenumber(eh); }

}  // namespace

TEST(Matter, StencilMatchesTaylorSolve) {
  const double dx = 0.1;
  const auto c = kinetic_stencil(dx);
  const auto ref = oracle::stencil_weights();
  for (int k = 0; k < 9; ++k) EXPECT_NEAR(c[k], ref[k] / (dx * dx), 1e-9) << "offset " << k - 4;
  EXPECT_NEAR(ref[4], -205.0 / 72.0, 1e-12);
  EXPECT_NEAR(ref[0], -1.0 / 560.0, 1e-12);
}

TEST(Matter, StencilIsExactForPolynomials) {
  const auto c = kinetic_stencil(0.2);
  for (int deg = 0; deg <= 8; ++deg) {
    double acc = 0.0;
    const double x0 = 0.7;
    for (int k = -4; k <= 4; ++k) acc += c[k + 4] * std::pow(x0 + 0.2 * k, deg);
    const double exact = deg >= 2 ? deg * (deg - 1) * std::pow(x0, deg - 2) : 0.0;
    EXPECT_NEAR(acc, exact, 1e-8 * std::max(1.0, std::abs(exact))) << "degree " << deg;
  }
}

TEST(Matter, PotentialAndDipoleValues) {
  const MorseParams p;
  EXPECT_DOUBLE_EQ(morse_potential_at(p.r_e, p), 0.0);
  const double r = 2.5;
  EXPECT_NEAR(morse_potential_at(r, p), 0.1994 * std::pow(std::exp(-1.189 * (r - 1.821)) - 1.0, 2), 1e-15);
  const MeckeParams m;
  EXPECT_NEAR(mecke_dipole_at(r, m), -1.634 * r * std::exp(-0.8818 * r), 1e-15);
  const GridBasis1D g{5, 0.5, 1.0};
  const auto abs = mecke_dipole(g, m, p);
  MeckeParams eq = m;
  eq.origin = DipoleOrigin::Equilibrium;
  const auto rel = mecke_dipole(g, eq, p);
  for (std::size_t i = 0; i < 5; ++i) {
    const double x = g.coordinate(i);
    EXPECT_NEAR(abs[i], mecke_dipole_at(x, m), 1e-15);
    EXPECT_NEAR(rel[i], mecke_dipole_at(x - p.r_e, m), 1e-15);
  }
}

TEST(Matter, AnalyticLevelsFormula) {
  const MorseParams p;
  const double we = p.a * std::sqrt(2.0 * p.D_e / kMu);
  const double wexe = p.a * p.a / (2.0 * kMu);
  for (std::size_t n = 0; n < 6; ++n) {
    const double v = n + 0.5;
    EXPECT_NEAR(analytic_morse_level(p, kMu, n), we * v - wexe * v * v, 1e-15);
  }
}

TEST(Matter, HamiltonianMatchesDenseOracle) {
  const GridBasis1D g{40, 0.1, 1.0};
  const auto v = morse_potential(g, MorseParams{});
  const Eigen::MatrixXd h = one_dimensional_hamiltonian(g, v, kMu);
  const Eigen::MatrixXd ref = oracle::dense_h1(v, 0.1, kMu);
  EXPECT_LT((h - ref).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Matter, DefaultGridGapWithinOneWavenumber) {
  const GridBasis1D g{150, 0.1, 1.0};
  const auto v = morse_potential(g, MorseParams{});
  const auto eig = solve_bound_states(g, v, kMu, 6);
  EXPECT_NEAR(cm(eig.transition_energy(0, 1)), 3783.267, 1.0);
}

TEST(Matter, FineGridLevelsMatchAnalytic) {
  const GridBasis1D g{600, 0.025, 1.0};
  const auto v = morse_potential(g, MorseParams{});
  const auto eig = solve_bound_states(g, v, kMu, 6);
  for (std::size_t n = 0; n < 6; ++n)
    EXPECT_NEAR(cm(eig.energies[n]), cm(analytic_morse_level(MorseParams{}, kMu, n)), 0.1) << "level " << n;
}

TEST(Matter, LevelsConvergeUnderRefinement) {
  auto levels = [](std::size_t n, double dx) {
    const GridBasis1D g{n, dx, 1.0};
    return solve_bound_states(g, morse_potential(g, MorseParams{}), kMu, 6).energies;
  };
  const auto coarse = levels(300, 0.05), mid = levels(600, 0.025), fine = levels(1200, 0.0125);
  for (std::size_t n = 0; n < 6; ++n) {
    const double e1 = std::abs(coarse[n] - fine[n]), e2 = std::abs(mid[n] - fine[n]);
    EXPECT_LT(e2, e1);
    EXPECT_LT(cm(std::abs(mid[n] - fine[n])), 0.1);
  }
}

TEST(Matter, EigenfunctionsOrthonormalOnGrid) {
  const GridBasis1D g{150, 0.1, 1.0};
  const auto eig = solve_bound_states(g, morse_potential(g, MorseParams{}), kMu, 10);
  const Eigen::MatrixXd s = eig.wavefunctions.transpose() * eig.wavefunctions * g.spacing;
  EXPECT_LT((s - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(eig.unit_vector(3).norm(), 1.0, 1e-12);
}

TEST(Matter, TransitionDipoleMatchesDenseOracle) {
  const GridBasis1D g{150, 0.1, 1.0};
  const auto v = morse_potential(g, MorseParams{});
  const auto dip = mecke_dipole(g, MeckeParams{});
  const auto eig = solve_bound_states(g, v, kMu, 4);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense_h1(v, g.spacing, kMu));
  const Eigen::VectorXd u0 = es.eigenvectors().col(0), u1 = es.eigenvectors().col(1);
  double d01 = 0.0;
  for (std::size_t i = 0; i < g.n_points; ++i) d01 += u0(i) * dip[i] * u1(i);
  EXPECT_NEAR(std::abs(transition_dipole(eig, dip, 0, 1)), std::abs(d01), 1e-10);
  EXPECT_NEAR(std::abs(d01), 0.0257, 0.001);
  const Eigen::MatrixXd d = dipole_matrix(eig, dip);
  EXPECT_LT((d - d.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(d(0, 1), transition_dipole(eig, dip, 0, 1), 1e-14);
}

TEST(Matter, TooFewBoundStatesThrows) {
  const GridBasis1D g{30, 0.05, 1.5};  // box narrower than the well
  EXPECT_THROW(solve_bound_states(g, morse_potential(g, MorseParams{}), kMu, 25), Error);
}

TEST(Matter, MoleculeTableColumns) {
  const GridBasis1D g{20, 0.2, 1.0};
  const auto v = morse_potential(g, MorseParams{});
  const auto d = mecke_dipole(g, MeckeParams{});
  const auto eig = solve_bound_states(g, v, kMu, 2, 1.0);
  std::ostringstream out;
  write_molecule_table(out, eig, v, d);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++rows;
  EXPECT_EQ(rows, 20);
}
