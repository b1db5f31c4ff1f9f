#pragma once

// Atomic units throughout (hbar = m_e = e = a0 = 1). Femtoseconds and
// wavenumbers appear only at I/O boundaries.

namespace molcav::units {

inline constexpr double kHartreeToWavenumber = 219474.6313632;  // cm^-1 per Eh
inline constexpr double kAuTimeToFs = 0.02418884254;            // fs per a.u.

constexpr double wavenumber_to_hartree(double cm) { return cm / kHartreeToWavenumber; }
constexpr double hartree_to_wavenumber(double eh) { return eh * kHartreeToWavenumber; }
constexpr double fs_to_au(double fs) { return fs / kAuTimeToFs; }
constexpr double au_to_fs(double au) { return au * kAuTimeToFs; }

}  // namespace molcav::units
