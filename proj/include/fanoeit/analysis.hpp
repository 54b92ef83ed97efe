#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fanoeit/params.hpp"
#include "fanoeit/spectrum.hpp"

namespace fanoeit {

/// Geometry of a transparency window plus the observables evaluated at its
/// center. width is reported both in a.u. and in units of gamma.
struct WindowReport {
    double center = 0.0;            // omega1 of the chi zero (a.u.)
    double width = 0.0;             // a.u.
    double width_over_gamma = 0.0;
    double threshold_used = 0.5;
    double n_g_center = 1.0;
    double dispersion_slope = 0.0;  // d Re chi / d omega1 at center (a.u.)
    std::optional<double> fano_zero;  // omega1 of Im chi(eps2=0) = 0; none in flat mode
};

/// Measures the transparency window of a spectrum: the maximal contiguous
/// interval around the two-photon resonance where Im chi stays at or below
/// threshold_fraction times the control-off absorption at the same
/// frequency. Edges are located by bisection on the closed form (windows can
/// be narrower than any practical grid step); the grid must still resolve
/// the window with at least 20 interior points or a resolution error names
/// the span to request.
WindowReport find_window(const SusceptibilitySpectrum& spec, const AtomicSystem& sys,
                         const FieldConfig& field, double threshold_fraction = 0.5);

enum class SweepVariable { eps2, q };

SweepVariable sweep_variable_from_name(const std::string& name);
std::string sweep_variable_name(SweepVariable v);

/// Power-law fit of window width against a swept variable (log-log least
/// squares).
struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    SweepVariable swept_variable = SweepVariable::eps2;
};

struct SweepPoint {
    double value = 0.0;
    bool ok = false;
    WindowReport report;      // valid when ok
    std::string error;        // set when !ok
    bool used_in_fit = false; // false when excluded (failure or width > 10 gamma)
};

struct SweepResult {
    ScalingFit fit;
    std::vector<SweepPoint> points;
};

/// Measures the window for each sweep value and fits width vs value.
/// Requires >= 5 values (and, for eps2, a span covering four decades of
/// predicted width, i.e. two decades of eps2). Points with width > 10 gamma
/// are excluded from the fit as outside the narrow-structure regime; the fit
/// aborts if fewer than 4 points survive.
SweepResult width_scaling_sweep(const AtomicSystem& sys, const FieldConfig& base_field,
                                SweepVariable variable,
                                const std::vector<double>& values);

/// Reference width of the conventional discrete-upper-state transparency
/// window, eps2^2 / Gamma; report-table quantity only.
double discrete_limit_width(double gamma_upper, double eps2);

/// Control-induced width of a lower state against the structureless
/// continuum: 2 pi eps2^2 B_j^2 / 4.
double flat_continuum_width(const AtomicSystem& sys, double eps2, Which which);

}  // namespace fanoeit
