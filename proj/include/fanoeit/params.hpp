#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fanoeit {

/// The medium's identity: bound-state energies, the autoionizing resonance
/// embedded in the continuum, flat-continuum coupling strengths and the
/// coherence relaxation rate. All fields in atomic units.
struct AtomicSystem {
    double e_b = 0.0;       // bound initial state, below threshold (< 0)
    double e_c = 0.0;       // second bound state (< 0)
    double e_a = 0.0;       // autoionizing resonance position (> 0)
    double gamma = 0.0;     // resonance half-width (> 0)
    double q = 0.0;         // Fano asymmetry parameter (finite)
    double b_b = 0.0;       // bound-flat-continuum dipole element for b (> 0)
    double b_c = 0.0;       // same for c (> 0)
    double gamma_cb = 0.0;  // coherence relaxation rate (>= 0)
    double density_n = 0.0; // atoms per cubic bohr (> 0)
    // The structureless-continuum limit is an explicit mode, not large q:
    // it replaces the resonance factor by the flat value outright.
    bool flat_continuum = false;

    void validate() const;  // throws invalid_input
};

/// Control field and the probe frequency grid.
struct FieldConfig {
    double eps2 = 0.0;    // control amplitude (>= 0)
    double omega2 = 0.0;  // control angular frequency (> 0)
    std::vector<double> probe_grid;  // strictly increasing omega_1 values

    void validate() const;  // throws invalid_input
};

enum class Preset { fig1, fig2, fig3, fig4, fig5 };

Preset preset_from_name(const std::string& name);
std::string preset_name(Preset p);

/// The reference parameter sets. E_b = -0.2, E_c = -0.1, E_a = 0.1,
/// gamma = 1e-9, B_b = 2, B_c = 3, gamma_cb = 0, N = 0.67e12 cm^-3;
/// (q, eps2) vary per figure. omega2 is set so hbar*omega2 = E_a - E_c,
/// which puts the two-photon resonance exactly on the autoionizing state;
/// the probe grid is centered there.
std::pair<AtomicSystem, FieldConfig> paper_preset(Preset p);

/// Frequency at which the two-photon detuning vanishes: (E_c + omega2) - E_b.
double two_photon_resonance(const AtomicSystem& sys, const FieldConfig& field);

/// Probe-resonance frequency with the autoionizing state: E_a - E_b.
double autoionizing_resonance(const AtomicSystem& sys);

/// Default grid: three nested symmetric spans (+-50 gamma, +-gamma,
/// +-1e-4 gamma) about `center`, concatenated and deduplicated to 4001
/// points, so windows five decades narrower than gamma stay resolved.
std::vector<double> make_nested_grid(double center, double gamma);

/// Uniform grid, endpoints included, center hit exactly when n is odd.
std::vector<double> make_uniform_grid(double center, double halfwidth, int n);

// Flat key = value parameter files. Keys: e_b_au, e_c_au, e_a_au, gamma_au,
// q, b_b_au, b_c_au, gamma_cb_au, density_cm3, eps2_au, omega2_au,
// grid_center_au, grid_halfwidth_au, grid_points, and the optional
// flat_continuum (0/1). '#' starts a comment.
std::pair<AtomicSystem, FieldConfig> load_params(const std::string& path);
void save_params(const std::string& path, const AtomicSystem& sys,
                 const FieldConfig& field, double grid_center,
                 double grid_halfwidth, int grid_points);

/// FNV-1a hash of the resolved parameter set; identifies a spectrum's inputs.
std::string params_fingerprint(const AtomicSystem& sys, const FieldConfig& field);

}  // namespace fanoeit
