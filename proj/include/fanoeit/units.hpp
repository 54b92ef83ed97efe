#pragma once

#include "fanoeit/constants.hpp"

namespace fanoeit::units {

/// Conversion factors between atomic units and lab units. The defaults are
/// the CODATA values from constants.hpp; a custom context can be supplied to
/// probe sensitivity to the constants themselves.
struct UnitContext {
    double hartree_to_ev = constants::hartree_ev;
    double hartree_to_hz = constants::hartree_hz;  // energy / h
    double bohr_to_cm = constants::bohr_cm;
};

struct EnergyEquivalents {
    double ev;
    double hz;
};

/// Energy in a.u. -> (eV, Hz). Linear; rejects non-finite input.
EnergyEquivalents convert_energy(double energy_au, const UnitContext& ctx = {});

/// Number density cm^-3 -> atoms per cubic bohr. Rejects negative input.
double convert_density(double n_cm3, const UnitContext& ctx = {});

/// Inverse of convert_density.
double density_to_cm3(double n_au, const UnitContext& ctx = {});

double cm_to_au_length(double cm, const UnitContext& ctx = {});
double au_length_to_cm(double au, const UnitContext& ctx = {});

}  // namespace fanoeit::units
