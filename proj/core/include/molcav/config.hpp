#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molcav/basis.hpp"
#include "molcav/matter.hpp"

namespace molcav {

/// Transition the default reduced mass is tuned to (cm^-1).
inline constexpr double kReferenceTransitionWavenumber = 3783.267;

/// Largest tolerated probability outside the truncated coherent state.
inline constexpr double kCoherentTruncationLimit = 1e-8;

/// Every physical and numerical parameter of one run. Lengths in bohr,
/// energies in hartree, dt in atomic time units, times in fs.
struct SimulationConfig {
  GridBasis1D grid1{150, 0.1, 1.0};
  GridBasis1D grid2{150, 0.1, 1.0};
  /// Photon truncation. `fock.omega` is ignored; see `omega`.
  FockBasis fock{30, 0.0};
  /// Cavity frequency; unset means resonant with the computed 0->1 gap.
  std::optional<double> omega;
  MorseParams morse;
  MeckeParams mecke;
  /// Unset means the value that puts the analytic Morse gap at the reference transition.
  std::optional<double> reduced_mass;
  double lambda = 0.01;
  std::complex<double> beta{2.0, 0.0};
  double dt = 20.0;
  double t_final = 2000.0;
  std::size_t output_stride = 20;
  std::size_t krylov_dim = 40;
  double krylov_tol = 1e-12;
  bool renormalize = false;
  std::size_t n_vib_project = 10;
  std::size_t checkpoint_stride = 500;
  std::vector<double> wigner_times{0.0, 500.0, 1000.0, 1350.0, 1500.0, 2000.0};
  std::size_t wigner_points = 201;
  /// Unset means max(6, ceil(|beta| sqrt(2) + 4)).
  std::optional<double> wigner_range;
  /// Evaluate Wigner minimum and negativity volume at every record.
  bool wigner_series = true;

  bool operator==(const SimulationConfig&) const = default;
};

/// Reduced mass actually used by a run.
double effective_reduced_mass(const SimulationConfig& cfg);
double effective_wigner_range(const SimulationConfig& cfg);
/// Number of propagation steps covering t_final.
std::size_t total_steps(const SimulationConfig& cfg);

/// Probability weight of a coherent state beyond the first n_levels Fock states.
double coherent_truncation_error(std::complex<double> beta, std::size_t n_levels);

/// Every violated invariant, each message prefixed by the offending field name.
std::vector<std::string> config_problems(const SimulationConfig& cfg);
/// Returns `cfg` unchanged when valid; throws ConfigError otherwise.
SimulationConfig validate_config(const SimulationConfig& cfg);

// Key-value text format: one `key = value` per line, `#` starts a comment.

SimulationConfig parse_config(std::istream& in);
SimulationConfig parse_config_string(std::string_view text);
SimulationConfig load_config(const std::filesystem::path& path);
/// Applies one `key = value` assignment; throws ConfigError on unknown keys or bad values.
void apply_config_entry(SimulationConfig& cfg, std::string_view key, std::string_view value);
/// Lossless text form; parse_config_string(serialize_config(c)) == c.
std::string serialize_config(const SimulationConfig& cfg);

/// FNV-1a over the fields that determine the trajectory (not its length or outputs).
std::uint64_t physics_hash(const SimulationConfig& cfg);

}  // namespace molcav
