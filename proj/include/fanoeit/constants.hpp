#pragma once

namespace fanoeit::constants {

// CODATA 2018 values. All internal computation is in Hartree atomic units
// (hbar = e = m_e = 1, eps0 = 1/4pi); conversions happen at the I/O boundary.
inline constexpr double hartree_ev = 27.211386245988;       // eV per hartree
inline constexpr double hartree_joule = 4.3597447222071e-18;  // J per hartree
inline constexpr double planck_joule_s = 6.62607015e-34;      // J s (exact)
inline constexpr double hartree_hz = hartree_joule / planck_joule_s;  // E/h
inline constexpr double bohr_cm = 0.529177210903e-8;          // cm per bohr
inline constexpr double au_time_s = 2.4188843265857e-17;      // s per a.u. time
inline constexpr double speed_of_light_au = 137.035999;       // c in a.u.

inline constexpr double cm_to_bohr = 1.0 / bohr_cm;
inline constexpr double ns_to_au_time = 1.0e-9 / au_time_s;

}  // namespace fanoeit::constants
