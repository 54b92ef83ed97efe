#include <cmath>
#include <numbers>

#include "fanoeit/errors.hpp"
#include "fanoeit/kernels.hpp"

namespace fanoeit::kernels {

ChiParams ChiParams::from(const AtomicSystem& sys, const FieldConfig& field) {
    ChiParams p;
    p.res_x = sys.e_a - sys.e_b;
    p.res_delta = (sys.e_c + field.omega2) - sys.e_b;
    p.gamma = sys.gamma;
    p.q = sys.q;
    p.gamma_cb = sys.gamma_cb;
    p.coupling = 0.25 * field.eps2 * field.eps2 * sys.b_c * sys.b_c;
    p.prefactor = -2.0 * std::numbers::pi * sys.density_n * sys.b_b * sys.b_b;
    p.flat = sys.flat_continuum;
    p.control_off = field.eps2 == 0.0;
    return p;
}

// Reference implementation. The SIMD variants must reproduce this arithmetic
// term for term; keep the operation order in sync with them.
void chi_grid_scalar(const ChiParams& p, std::span<const double> omega1,
                     std::span<double> re, std::span<double> im) {
    if (re.size() != omega1.size() || im.size() != omega1.size())
        throw invalid_input("chi_grid: output spans must match the grid size");
    constexpr double pi = std::numbers::pi;
    const double g = p.gamma;
    const double q = p.q;
    const double qq1 = q * q - 1.0;
    const double two_q_g2 = 2.0 * q * g * g;
    for (std::size_t k = 0; k < omega1.size(); ++k) {
        const double x = omega1[k] - p.res_x;
        double fr, fi;
        if (p.flat) {
            fr = 0.0;
            fi = -pi;
        } else {
            const double s = x * x + g * g;
            const double t = x + q * g;
            fr = pi * (g * x * qq1 - two_q_g2) / s;
            fi = -pi * (t * t) / s;
        }
        if (p.control_off) {
            re[k] = p.prefactor * fr;
            im[k] = p.prefactor * fi;
            continue;
        }
        const double delta = omega1[k] - p.res_delta;
        const double dr = delta - p.coupling * fr;
        const double di = p.gamma_cb - p.coupling * fi;
        const double nr = fr * delta - fi * p.gamma_cb;
        const double ni = fr * p.gamma_cb + fi * delta;
        const double den = dr * dr + di * di;
        re[k] = p.prefactor * (nr * dr + ni * di) / den;
        im[k] = p.prefactor * (ni * dr - nr * di) / den;
    }
}

}  // namespace fanoeit::kernels
