#include "fanoeit/units.hpp"

#include <cmath>

#include "fanoeit/errors.hpp"

namespace fanoeit::units {

EnergyEquivalents convert_energy(double energy_au, const UnitContext& ctx) {
    if (!std::isfinite(energy_au))
        throw invalid_input("convert_energy: non-finite energy");
    return {energy_au * ctx.hartree_to_ev, energy_au * ctx.hartree_to_hz};
}

double convert_density(double n_cm3, const UnitContext& ctx) {
    if (!(n_cm3 >= 0.0))
        throw invalid_input("convert_density: density must be >= 0");
    const double bohr3 = ctx.bohr_to_cm * ctx.bohr_to_cm * ctx.bohr_to_cm;
    return n_cm3 * bohr3;
}

double density_to_cm3(double n_au, const UnitContext& ctx) {
    const double bohr3 = ctx.bohr_to_cm * ctx.bohr_to_cm * ctx.bohr_to_cm;
    return n_au / bohr3;
}

double cm_to_au_length(double cm, const UnitContext& ctx) {
    return cm / ctx.bohr_to_cm;
}

double au_length_to_cm(double au, const UnitContext& ctx) {
    return au * ctx.bohr_to_cm;
}

}  // namespace fanoeit::units
