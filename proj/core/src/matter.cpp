#include "molcav/matter.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "molcav/error.hpp"

namespace molcav {

Eigen::VectorXd VibrationalEigensystem::unit_vector(std::size_t k) const {
  return wavefunctions.col(static_cast<Eigen::Index>(k)) * std::sqrt(grid.spacing);
}

double morse_potential_at(double r, const MorseParams& p) {
  const double e = std::exp(-p.a * (r - p.r_e)) - 1.0;
  return p.D_e * e * e;
}

std::vector<double> morse_potential(const GridBasis1D& grid, const MorseParams& p) {
  std::vector<double> v(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) v[i] = morse_potential_at(grid.coordinate(i), p);
  return v;
}

double mecke_dipole_at(double x, const MeckeParams& p) { return -p.gamma * x * std::exp(-p.delta * x); }

std::vector<double> mecke_dipole(const GridBasis1D& grid, const MeckeParams& p, const MorseParams& morse) {
  const double shift = p.origin == DipoleOrigin::Equilibrium ? morse.r_e : 0.0;
  std::vector<double> d(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) d[i] = mecke_dipole_at(grid.coordinate(i) - shift, p);
  return d;
}

std::array<double, 9> kinetic_stencil(double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("kinetic_stencil: spacing must be positive");
  constexpr std::array<double, 9> w = {-1.0 / 560.0, 8.0 / 315.0, -1.0 / 5.0, 8.0 / 5.0, -205.0 / 72.0,
                                       8.0 / 5.0,    -1.0 / 5.0,  8.0 / 315.0, -1.0 / 560.0};
  const double inv_h2 = 1.0 / (spacing * spacing);
  std::array<double, 9> c{};
  for (std::size_t k = 0; k < 9; ++k) c[k] = w[k] * inv_h2;
  return c;
}

double analytic_morse_level(const MorseParams& p, double reduced_mass, std::size_t n) {
  const double we = p.a * std::sqrt(2.0 * p.D_e / reduced_mass);
  const double anh = p.a * p.a / (2.0 * reduced_mass);
  const double v = static_cast<double>(n) + 0.5;
  return we * v - anh * v * v;
}

double reduced_mass_for_gap(const MorseParams& p, double gap) {
  // With s = 1/sqrt(mu): a^2 s^2 - a sqrt(2 D_e) s + gap = 0.
  const double b = p.a * std::sqrt(2.0 * p.D_e);
  const double disc = b * b - 4.0 * p.a * p.a * gap;
  if (!(gap > 0.0) || disc < 0.0) throw std::invalid_argument("reduced_mass_for_gap: gap not reachable by this well");
  const double s = (b - std::sqrt(disc)) / (2.0 * p.a * p.a);
  return 1.0 / (s * s);
}

Eigen::MatrixXd one_dimensional_hamiltonian(const GridBasis1D& grid, std::span<const double> potential,
                                            double reduced_mass) {
  const auto n = static_cast<Eigen::Index>(grid.n_points);
  if (potential.size() != grid.n_points) throw DimensionError("one_dimensional_hamiltonian: potential size mismatch");
  const auto c = kinetic_stencil(grid.spacing);
  const double scale = -0.5 / reduced_mass;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = -4; k <= 4; ++k) {
      const Eigen::Index j = i + k;
      if (j >= 0 && j < n) h(i, j) += scale * c[static_cast<std::size_t>(k + 4)];
    }
    h(i, i) += potential[static_cast<std::size_t>(i)];
  }
  return h;
}

VibrationalEigensystem solve_bound_states(const GridBasis1D& grid, std::span<const double> potential,
                                          double reduced_mass, std::size_t k,
                                          std::optional<double> bound_threshold) {
  if (k == 0 || k > grid.n_points) throw std::invalid_argument("solve_bound_states: invalid state count");
  const Eigen::MatrixXd h = one_dimensional_hamiltonian(grid, potential, reduced_mass);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("solve_bound_states: eigensolver failed to converge");

  const double threshold = bound_threshold.value_or(potential.back());
  VibrationalEigensystem eig;
  eig.grid = grid;
  eig.energies.resize(k);
  eig.wavefunctions.resize(h.rows(), static_cast<Eigen::Index>(k));
  const double inv_sqrt_h = 1.0 / std::sqrt(grid.spacing);

  std::ostringstream residuals;
  bool residual_failure = false;
  for (std::size_t s = 0; s < k; ++s) {
    const auto col = static_cast<Eigen::Index>(s);
    Eigen::VectorXd u = solver.eigenvectors().col(col);
    const double e = solver.eigenvalues()(col);
    if (s > 0 && !(e > eig.energies[s - 1])) throw NumericalError("solve_bound_states: degenerate spectrum");
    if (!(e < threshold)) {
      std::ostringstream msg;
      msg << "solve_bound_states: level " << s << " (E = " << e << " Eh) is not bound below " << threshold;
      throw NumericalError(msg.str());
    }
    const double res = (h * u - e * u).norm();
    residuals << " r" << s << "=" << res;
    if (res > 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff())) residual_failure = true;

    // Sign convention: first lobe that reaches 1% of the peak is positive.
    const double peak = u.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (std::abs(u(i)) > 1e-2 * peak) {
        if (u(i) < 0.0) u = -u;
        break;
      }
    }
    eig.energies[s] = e;
    eig.wavefunctions.col(col) = u * inv_sqrt_h;
  }
  if (residual_failure) throw NumericalError("solve_bound_states: eigenpair residuals too large:" + residuals.str());
  return eig;
}

double transition_dipole(const VibrationalEigensystem& eig, std::span<const double> dipole, std::size_t i,
                         std::size_t j) {
  if (i >= eig.count() || j >= eig.count()) throw std::out_of_range("transition_dipole: state index out of range");
  if (dipole.size() != eig.grid.n_points) throw DimensionError("transition_dipole: dipole size mismatch");
  const auto a = eig.wavefunctions.col(static_cast<Eigen::Index>(i));
  const auto b = eig.wavefunctions.col(static_cast<Eigen::Index>(j));
  double sum = 0.0;
  for (Eigen::Index r = 0; r < a.size(); ++r) sum += a(r) * dipole[static_cast<std::size_t>(r)] * b(r);
  return sum * eig.grid.spacing;
}

Eigen::MatrixXd dipole_matrix(const VibrationalEigensystem& eig, std::span<const double> dipole) {
  const auto k = static_cast<Eigen::Index>(eig.count());
  Eigen::MatrixXd d(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      d(i, j) = transition_dipole(eig, dipole, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      d(j, i) = d(i, j);
    }
  }
  return d;
}

void write_molecule_table(std::ostream& out, const VibrationalEigensystem& eig, std::span<const double> potential,
                          std::span<const double> dipole) {
  out << "# r_bohr\tV_hartree\tR_bohr_e";
  for (std::size_t k = 0; k < eig.count(); ++k) out << "\tphi_" << k;
  out << '\n' << std::setprecision(12);
  for (std::size_t i = 0; i < eig.grid.n_points; ++i) {
    out << eig.grid.coordinate(i) << '\t' << potential[i] << '\t' << dipole[i];
    for (std::size_t k = 0; k < eig.count(); ++k)
      out << '\t' << eig.wavefunctions(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    out << '\n';
  }
}

}  // namespace molcav
