#pragma once

#include <complex>
#include <vector>

#include "fanoeit/params.hpp"
#include "fanoeit/susceptibility.hpp"

namespace fanoeit {

/// Narrowband probe pulse: complex envelope samples on a uniform time grid,
/// carrier kept separate. envelope_fwhm_time is the intensity FWHM.
struct ProbePulse {
    double carrier = 0.0;            // omega1 (a.u.)
    double envelope_fwhm_time = 0.0; // a.u. of time
    double grid_dt = 0.0;            // a.u. of time
    std::vector<cd> samples;         // power-of-two length
};

/// Gaussian-envelope pulse centered at t_center on an n-sample grid.
ProbePulse make_gaussian_probe(double carrier, double fwhm_time, double dt,
                               std::size_t n, double t_center);

/// Pulse sized for a delay measurement through the given medium: spectral
/// FWHM = bandwidth_fraction of the transparency window, grid long enough
/// that the delayed pulse keeps three FWHMs of margin.
ProbePulse make_probe_for_medium(const AtomicSystem& sys, const FieldConfig& field,
                                 double length_l, double bandwidth_fraction = 0.1);

struct PropagationResult {
    double delay = 0.0;                       // a.u. of time, vacuum transit removed
    double transmitted_energy_fraction = 1.0; // in [0, 1] for a passive medium
    std::vector<cd> output_samples;
};

/// One-shot frequency-domain transfer through length_l of the homogeneous
/// dressed medium: each spectral component is multiplied by
/// exp[i (omega/c) (1 + chi(omega)/2) L]. Output samples are reported in the
/// frame already retarded by the vacuum transit L/c, so `delay` is the
/// intensity-centroid shift with L/c removed. Errors if the pulse spectrum
/// leaves the computed chi grid or the narrowband margins fail.
PropagationResult propagate(const ProbePulse& pulse, const AtomicSystem& sys,
                            const FieldConfig& field, double length_l);

/// Same transfer with chi identically zero; delay comes out zero.
PropagationResult propagate_vacuum(const ProbePulse& pulse, double length_l);

/// Group-delay prediction (n_g(center) - 1) L / c from the dispersion slope.
double delay_prediction(const AtomicSystem& sys, const FieldConfig& field,
                        double length_l);

}  // namespace fanoeit
