#include "fanoeit/susceptibility.hpp"

#include <cmath>
#include <numbers>

#include "fanoeit/errors.hpp"
#include "fanoeit/kernels.hpp"

namespace fanoeit {

namespace {
constexpr double pi = std::numbers::pi;

double coupling_b(const AtomicSystem& sys, Which w) {
    return w == Which::b ? sys.b_b : sys.b_c;
}
}  // namespace

double fano_profile(double e, const AtomicSystem& sys, Which which) {
    const double b = coupling_b(sys, which);
    if (sys.flat_continuum) return b * b;
    const double v = e - sys.e_a;
    const double num = v + sys.q * sys.gamma;
    return b * b * num * num / (v * v + sys.gamma * sys.gamma);
}

double fano_profile_derivative(double e, const AtomicSystem& sys, Which which) {
    const double b = coupling_b(sys, which);
    if (sys.flat_continuum) return 0.0;
    const double g = sys.gamma;
    const double v = e - sys.e_a;
    const double s = v * v + g * g;
    return b * b * 2.0 * g * (v + sys.q * g) * (g - sys.q * v) / (s * s);
}

cd resonance_factor(double x, const AtomicSystem& sys) {
    if (sys.flat_continuum) return {0.0, -pi};
    const double g = sys.gamma;
    const double q = sys.q;
    const double s = x * x + g * g;
    const double re = pi * (g * x * (q * q - 1.0) - 2.0 * q * g * g) / s;
    const double t = x + q * g;
    const double im = -pi * t * t / s;
    return {re, im};
}

cd resonance_factor_derivative(double x, const AtomicSystem& sys) {
    if (sys.flat_continuum) return {0.0, 0.0};
    const double g = sys.gamma;
    const cd qmi(sys.q, -1.0);
    const cd z(x, g);
    return -pi * g * qmi * qmi / (z * z);
}

cd r_closed(double omega1, const AtomicSystem& sys, Which i, Which j) {
    const double x = omega1 - autoionizing_resonance(sys);
    return coupling_b(sys, i) * coupling_b(sys, j) * resonance_factor(x, sys);
}

cd chi(double omega1, const AtomicSystem& sys, const FieldConfig& field) {
    const auto p = kernels::ChiParams::from(sys, field);
    const double x = omega1 - p.res_x;
    const double delta = omega1 - p.res_delta;
    const cd f = resonance_factor(x, sys);
    if (p.control_off) return p.prefactor * f;
    const cd g(delta, p.gamma_cb);
    const cd d = g - p.coupling * f;
    if (std::abs(d) == 0.0)
        throw invalid_input("chi: degenerate input, dressed denominator vanishes exactly");
    return p.prefactor * f * g / d;
}

cd chi_termwise(double omega1, const AtomicSystem& sys, const FieldConfig& field) {
    const double delta = omega1 - two_photon_resonance(sys, field);
    const cd r_bb = r_closed(omega1, sys, Which::b, Which::b);
    const cd r_bc = r_closed(omega1, sys, Which::b, Which::c);
    const cd r_cb = r_closed(omega1, sys, Which::c, Which::b);
    const cd r_cc = r_closed(omega1, sys, Which::c, Which::c);
    const double quarter = 0.25 * field.eps2 * field.eps2;
    const cd d = cd(delta, sys.gamma_cb) - quarter * r_cc;
    const double pref = -2.0 * pi * sys.density_n;
    if (field.eps2 == 0.0) return pref * r_bb;
    if (std::abs(d) == 0.0)
        throw invalid_input("chi: degenerate input, dressed denominator vanishes exactly");
    return pref * (r_bb + quarter * r_bc * r_cb / d);
}

cd chi_derivative(double omega1, const AtomicSystem& sys, const FieldConfig& field) {
    const auto p = kernels::ChiParams::from(sys, field);
    const double x = omega1 - p.res_x;
    const cd fp = resonance_factor_derivative(x, sys);
    if (p.control_off) return p.prefactor * fp;
    const double delta = omega1 - p.res_delta;
    const cd f = resonance_factor(x, sys);
    const cd g(delta, p.gamma_cb);
    const cd d = g - p.coupling * f;
    if (std::abs(d) == 0.0)
        throw invalid_input("chi_derivative: degenerate input, dressed denominator vanishes");
    return p.prefactor * (fp * g * g - p.coupling * f * f) / (d * d);
}

double window_width_estimate(const AtomicSystem& sys, double eps2) {
    const double a = 0.25 * eps2 * eps2 * sys.b_c * sys.b_c;
    if (sys.flat_continuum) return 2.0 * pi * a;
    return 2.0 * pi * sys.q * a * std::sqrt(sys.q * sys.q + 8.0);
}

namespace {

double feature_scale(double omega1, const AtomicSystem& sys, const FieldConfig& field) {
    double scale = sys.flat_continuum ? std::abs(omega1 - two_photon_resonance(sys, field))
                                      : sys.gamma;
    if (sys.flat_continuum && scale == 0.0) scale = sys.gamma;
    if (field.eps2 > 0.0) {
        const double w = window_width_estimate(sys, field.eps2);
        if (w > 0.0 && w < scale) scale = w;
    }
    return scale;
}

}  // namespace

double group_index(double omega1, const AtomicSystem& sys, const FieldConfig& field,
                   DerivativeMode mode, double fd_step) {
    if (mode == DerivativeMode::analytic)
        return 1.0 + 0.5 * omega1 * chi_derivative(omega1, sys, field).real();

    double h = fd_step > 0.0 ? fd_step : 1e-3 * feature_scale(omega1, sys, field);
    if (omega1 + h == omega1 || omega1 - h == omega1)
        throw numerical_error("group_index: finite-difference step underflow");
    // Evaluate at the representable frequencies actually reached so the
    // divided difference stays consistent when h nears one ulp of omega1.
    auto central = [&](double step) {
        const double hi = omega1 + step;
        const double lo = omega1 - step;
        return (chi(hi, sys, field).real() - chi(lo, sys, field).real()) / (hi - lo);
    };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    const double richardson = (4.0 * d2 - d1) / 3.0;
    return 1.0 + 0.5 * omega1 * richardson;
}

}  // namespace fanoeit
