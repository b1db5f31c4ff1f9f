#pragma once

#include <cstddef>
#include <vector>

#include "molcav/quantum_info.hpp"
#include "molcav/state.hpp"

namespace molcav {

/// Phase-space sampling in dimensionless quadratures x = sqrt(omega) q,
/// y = p / sqrt(omega). Both axes span [-range, range] inclusive.
struct PhaseSpaceGrid {
  std::size_t q_points = 201;
  std::size_t p_points = 201;
  double q_range = 6.0;
  double p_range = 6.0;

  double dq() const { return 2.0 * q_range / static_cast<double>(q_points - 1); }
  double dp() const { return 2.0 * p_range / static_cast<double>(p_points - 1); }
  double q(std::size_t i) const { return -q_range + dq() * static_cast<double>(i); }
  double p(std::size_t j) const { return -p_range + dp() * static_cast<double>(j); }
};

/// Throws ConfigError if either range is narrower than |beta| sqrt(2) + 4.
void check_phase_space_grid(const PhaseSpaceGrid& grid, Complex beta);

struct WignerField {
  PhaseSpaceGrid grid;
  std::vector<double> values;  // values[iq * p_points + ip]
  double time_fs = 0.0;

  double at(std::size_t iq, std::size_t ip) const { return values[iq * grid.p_points + ip]; }
  /// dq dp sum W
  double normalization() const;
  /// 2 pi dq dp sum W^2, equal to Tr rho^2.
  double purity() const;
};

/// Photon state from contracting both grid factors directly.
DensityMatrix reduced_photon_density(const StateVector& psi);

/// W(x, y) from Fock-basis Moyal kernels, evaluated with log-scaled Laguerre terms.
double wigner_at(const DensityMatrix& rho, double x, double y);
WignerField wigner_from_density(const DensityMatrix& rho, const PhaseSpaceGrid& grid, double time_fs = 0.0);

struct WignerNegativity {
  double min_value = 0.0;
  /// 2 dq dp sum max(0, -W), i.e. integral |W| - 1.
  double volume = 0.0;
};

WignerNegativity wigner_negativity(const WignerField& w);

}  // namespace molcav
