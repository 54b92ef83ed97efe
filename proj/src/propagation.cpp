#include "fanoeit/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fanoeit/analysis.hpp"
#include "fanoeit/constants.hpp"
#include "fanoeit/errors.hpp"
#include "fanoeit/kernels.hpp"

namespace fanoeit {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double four_ln2 = 4.0 * std::numbers::ln2;

bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

// Iterative radix-2 FFT, enough for the pulse grids used here.
void fft(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
        const cd wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

double intensity_centroid(const std::vector<cd>& samples, double dt) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double w = std::norm(samples[k]);
        num += w * static_cast<double>(k);
        den += w;
    }
    if (den == 0.0) throw numerical_error("propagate: zero-energy pulse");
    return dt * num / den;
}

void validate_pulse(const ProbePulse& pulse) {
    if (!(pulse.carrier > 0.0)) throw invalid_input("ProbePulse: carrier must be > 0");
    if (!(pulse.grid_dt > 0.0)) throw invalid_input("ProbePulse: grid_dt must be > 0");
    if (!(pulse.envelope_fwhm_time > 0.0))
        throw invalid_input("ProbePulse: envelope_fwhm_time must be > 0");
    if (pulse.samples.size() < 8 || !is_pow2(pulse.samples.size()))
        throw invalid_input("ProbePulse: need a power-of-two sample count >= 8");
}

// chi_of(omegas, powers, peak_power) -> chi per spectral bin.
template <typename ChiOf>
PropagationResult transfer(const ProbePulse& pulse, double length_l, ChiOf chi_of) {
    validate_pulse(pulse);
    if (!(length_l >= 0.0)) throw invalid_input("propagate: length must be >= 0");

    const std::size_t n = pulse.samples.size();
    const double dt = pulse.grid_dt;
    std::vector<cd> freq = pulse.samples;
    fft(freq, false);

    const double dnu = 2.0 * pi / (dt * static_cast<double>(n));
    std::vector<double> omegas(n), powers(n);
    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double idx = k < n / 2 ? static_cast<double>(k)
                                     : static_cast<double>(k) - static_cast<double>(n);
        // DFT bin +idx carries envelope factor exp(+i idx dnu t); against the
        // exp(-i omega t) carrier that is the physical frequency
        // carrier - idx dnu.
        omegas[k] = pulse.carrier - idx * dnu;
        powers[k] = std::norm(freq[k]);
        peak = std::max(peak, powers[k]);
    }
    const std::vector<cd> chi_bins = chi_of(omegas, powers, peak);

    const double c = constants::speed_of_light_au;
    for (std::size_t k = 0; k < n; ++k) {
        // exp[i (omega/c)(1 + chi/2) L] with the vacuum factor exp[i omega L/c]
        // split off: the output lives in the frame retarded by L/c.
        const cd phase = cd(0.0, 1.0) * (omegas[k] / c) * (0.5 * chi_bins[k]) * length_l;
        freq[k] *= std::exp(phase);
    }

    PropagationResult result;
    result.output_samples = std::move(freq);
    fft(result.output_samples, true);

    double energy_in = 0.0, energy_out = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        energy_in += std::norm(pulse.samples[k]);
        energy_out += std::norm(result.output_samples[k]);
    }
    result.transmitted_energy_fraction = energy_out / energy_in;
    result.delay = intensity_centroid(result.output_samples, dt) -
                   intensity_centroid(pulse.samples, dt);
    return result;
}

}  // namespace

ProbePulse make_gaussian_probe(double carrier, double fwhm_time, double dt,
                               std::size_t n, double t_center) {
    if (!is_pow2(n) || n < 8)
        throw invalid_input("make_gaussian_probe: n must be a power of two >= 8");
    ProbePulse pulse;
    pulse.carrier = carrier;
    pulse.envelope_fwhm_time = fwhm_time;
    pulse.grid_dt = dt;
    pulse.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt - t_center;
        pulse.samples[k] = std::exp(-2.0 * std::numbers::ln2 * t * t /
                                    (fwhm_time * fwhm_time));
    }
    return pulse;
}

ProbePulse make_probe_for_medium(const AtomicSystem& sys, const FieldConfig& field,
                                 double length_l, double bandwidth_fraction) {
    sys.validate();
    field.validate();
    if (!(bandwidth_fraction > 0.0 && bandwidth_fraction < 0.3))
        throw invalid_input("make_probe_for_medium: bandwidth fraction must be in "
                            "(0, 0.3) for a delay measurement");
    const SusceptibilitySpectrum spec = compute_spectrum(sys, field);
    const WindowReport window = find_window(spec, sys, field);
    const double spectral_fwhm = bandwidth_fraction * window.width;
    const double fwhm_t = four_ln2 / spectral_fwhm;
    const double delay = delay_prediction(sys, field, length_l);
    const double t_center = 3.2 * fwhm_t;
    const double t_total = std::max(7.0 * fwhm_t, t_center + delay + 3.5 * fwhm_t);
    const std::size_t n = 1 << 15;
    const double dt = t_total / static_cast<double>(n);
    return make_gaussian_probe(window.center, fwhm_t, dt, n, t_center);
}

PropagationResult propagate(const ProbePulse& pulse, const AtomicSystem& sys,
                            const FieldConfig& field, double length_l) {
    sys.validate();
    field.validate();
    validate_pulse(pulse);

    // Narrowband condition and time-grid margins against the medium's window.
    const double spectral_fwhm = four_ln2 / pulse.envelope_fwhm_time;
    double delay_est = 0.0;
    if (field.eps2 > 0.0 && sys.gamma_cb == 0.0) {
        const SusceptibilitySpectrum probe_spec = compute_spectrum(sys, field);
        const WindowReport window = find_window(probe_spec, sys, field);
        if (!(spectral_fwhm < 0.3 * window.width))
            throw invalid_input("propagate: pulse spectral FWHM exceeds 0.3 of the "
                                "transparency window; not narrowband");
        delay_est = delay_prediction(sys, field, length_l);
    }
    const double t_total = pulse.grid_dt * static_cast<double>(pulse.samples.size());
    const double t_in = intensity_centroid(pulse.samples, pulse.grid_dt);
    const double margin = 3.0 * pulse.envelope_fwhm_time;
    if (t_in < margin || t_in + delay_est + margin > t_total)
        throw invalid_input("propagate: pulse (or its delayed image) closer than "
                            "3 FWHM to the time-grid edge");

    const double grid_lo = field.probe_grid.front();
    const double grid_hi = field.probe_grid.back();
    const auto p = kernels::ChiParams::from(sys, field);
    return transfer(pulse, length_l,
                    [&](const std::vector<double>& omegas,
                        const std::vector<double>& powers, double peak) {
        for (std::size_t k = 0; k < omegas.size(); ++k)
            if (powers[k] > 1e-12 * peak &&
                (omegas[k] < grid_lo || omegas[k] > grid_hi))
                throw numerical_error("propagate: pulse spectral support exits the "
                                      "computed chi grid");
        std::vector<double> re(omegas.size()), im(omegas.size());
        kernels::chi_grid(p, omegas, re, im);
        std::vector<cd> chi_bins(omegas.size());
        for (std::size_t k = 0; k < omegas.size(); ++k) chi_bins[k] = cd(re[k], im[k]);
        return chi_bins;
    });
}

PropagationResult propagate_vacuum(const ProbePulse& pulse, double length_l) {
    return transfer(pulse, length_l,
                    [](const std::vector<double>& omegas, const std::vector<double>&,
                       double) { return std::vector<cd>(omegas.size(), cd(0.0, 0.0)); });
}

double delay_prediction(const AtomicSystem& sys, const FieldConfig& field,
                        double length_l) {
    sys.validate();
    field.validate();
    if (!(length_l >= 0.0)) throw invalid_input("delay_prediction: length must be >= 0");
    double center = two_photon_resonance(sys, field);
    if (field.eps2 > 0.0) {
        const SusceptibilitySpectrum spec = compute_spectrum(sys, field);
        center = find_window(spec, sys, field).center;
    }
    const double n_g = group_index(center, sys, field, DerivativeMode::analytic);
    return (n_g - 1.0) * length_l / constants::speed_of_light_au;
}

}  // namespace fanoeit
