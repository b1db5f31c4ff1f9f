#include "molcav/wigner.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "molcav/error.hpp"

namespace molcav {

void check_phase_space_grid(const PhaseSpaceGrid& grid, Complex beta) {
  const double need = std::abs(beta) * std::sqrt(2.0) + 4.0;
  std::vector<std::string> problems;
  if (grid.q_points < 2 || grid.p_points < 2) problems.push_back("wigner grid needs at least 2 points per axis");
  if (grid.q_range < need || grid.p_range < need) {
    std::ostringstream msg;
    msg << "wigner range " << std::min(grid.q_range, grid.p_range) << " narrower than |beta| sqrt(2) + 4 = " << need;
    problems.push_back(msg.str());
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

double WignerField::normalization() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.dq() * grid.dp();
}

double WignerField::purity() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return 2.0 * std::numbers::pi * s * grid.dq() * grid.dp();
}

DensityMatrix reduced_photon_density(const StateVector& psi) {
  const std::size_t n1 = psi.basis.n1(), n2 = psi.basis.n2(), nf = psi.basis.nf();
  const auto nfi = static_cast<Eigen::Index>(nf);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(nfi, nfi);
  Eigen::MatrixXcd partial(nfi, nfi);
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    partial.setZero();
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      const Complex* c = psi.amplitudes.data() + (i1 * n2 + i2) * nf;
      for (std::size_t m = 0; m < nf; ++m) {
        const Complex cm = std::conj(c[m]);
        for (std::size_t n = 0; n < nf; ++n) partial(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) += c[n] * cm;
      }
    }
    rho += partial;
  }
  return {std::move(rho), {nf}};
}

double wigner_at(const DensityMatrix& rho, double x, double y) {
  const auto nf = static_cast<Eigen::Index>(rho.size());
  const double r2 = x * x + y * y;
  const double z = 2.0 * r2;
  const double log_abs_a = 0.5 * std::log(z);  // |sqrt(2)(x - iy)|
  const double theta = std::atan2(y, x);
  double total = 0.0;

  for (Eigen::Index k = 0; k < nf; ++k) {
    // n = 0 prefactor sqrt(0!/k!) |A|^k e^{-r^2}; later n by ratio sqrt((n+1)/(n+k+1)).
    const double dk = static_cast<double>(k);
    double log_pref = -r2 - 0.5 * std::lgamma(dk + 1.0);
    if (k > 0) {
      if (z == 0.0) continue;
      log_pref += dk * log_abs_a;
    }
    double pref = std::exp(log_pref);
    const Complex phase = std::polar(1.0, -dk * theta);

    double l_prev = 0.0, l_cur = 1.0;  // L_{n-1}^k, L_n^k
    Complex acc = 0.0;
    for (Eigen::Index n = 0; n + k < nf; ++n) {
      const double dn = static_cast<double>(n);
      if (n == 1) {
        l_prev = 1.0;
        l_cur = 1.0 + dk - z;
      } else if (n > 1) {
        const double next = ((2.0 * dn - 1.0 + dk - z) * l_cur - (dn - 1.0 + dk) * l_prev) / dn;
        l_prev = l_cur;
        l_cur = next;
      }
      if (n > 0) pref *= std::sqrt(dn / (dn + dk));
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      acc += rho.elements(n + k, n) * (sign * pref * l_cur);
    }
    const double contrib = (acc * phase).real();
    total += k == 0 ? contrib : 2.0 * contrib;
  }
  return total / std::numbers::pi;
}

WignerField wigner_from_density(const DensityMatrix& rho, const PhaseSpaceGrid& grid, double time_fs) {
  if (rho.dims.size() != 1) throw DimensionError("wigner_from_density: expected a single-mode density matrix");
  WignerField w;
  w.grid = grid;
  w.time_fs = time_fs;
  w.values.resize(grid.q_points * grid.p_points);
  const auto nq = static_cast<std::ptrdiff_t>(grid.q_points);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < nq; ++i) {
    const auto iq = static_cast<std::size_t>(i);
    for (std::size_t ip = 0; ip < grid.p_points; ++ip)
      w.values[iq * grid.p_points + ip] = wigner_at(rho, grid.q(iq), grid.p(ip));
  }
  return w;
}

WignerNegativity wigner_negativity(const WignerField& w) {
  WignerNegativity out;
  out.min_value = w.values.empty() ? 0.0 : w.values.front();
  double neg = 0.0;
  for (double v : w.values) {
    out.min_value = std::min(out.min_value, v);
    if (v < 0.0) neg -= v;
  }
  out.volume = 2.0 * neg * w.grid.dq() * w.grid.dp();
  return out;
}

}  // namespace molcav
