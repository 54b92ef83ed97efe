// NEON variant of the chi grid kernel: two probe frequencies per iteration.
// aarch64 only; mirrors the scalar reference arithmetic.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <numbers>

#include "fanoeit/errors.hpp"
#include "fanoeit/kernels.hpp"

namespace fanoeit::kernels {

void chi_grid_neon(const ChiParams& p, std::span<const double> omega1,
                   std::span<double> re, std::span<double> im) {
    if (re.size() != omega1.size() || im.size() != omega1.size())
        throw invalid_input("chi_grid: output spans must match the grid size");
    constexpr double pi = std::numbers::pi;
    const double g = p.gamma;
    const double q = p.q;

    const float64x2_t v_pi = vdupq_n_f64(pi);
    const float64x2_t v_res_x = vdupq_n_f64(p.res_x);
    const float64x2_t v_res_d = vdupq_n_f64(p.res_delta);
    const float64x2_t v_g2 = vdupq_n_f64(g * g);
    const float64x2_t v_qg = vdupq_n_f64(q * g);
    const float64x2_t v_qq1g = vdupq_n_f64(g * (q * q - 1.0));
    const float64x2_t v_2qg2 = vdupq_n_f64(2.0 * q * g * g);
    const float64x2_t v_gcb = vdupq_n_f64(p.gamma_cb);
    const float64x2_t v_a = vdupq_n_f64(p.coupling);
    const float64x2_t v_pref = vdupq_n_f64(p.prefactor);
    const float64x2_t v_zero = vdupq_n_f64(0.0);
    const float64x2_t v_mpi = vdupq_n_f64(-pi);

    std::size_t k = 0;
    const std::size_t n2 = omega1.size() / 2 * 2;
    for (; k < n2; k += 2) {
        const float64x2_t w = vld1q_f64(omega1.data() + k);
        float64x2_t fr, fi;
        if (p.flat) {
            fr = v_zero;
            fi = v_mpi;
        } else {
            const float64x2_t x = vsubq_f64(w, v_res_x);
            const float64x2_t s = vfmaq_f64(v_g2, x, x);
            const float64x2_t t = vaddq_f64(x, v_qg);
            const float64x2_t num_r = vfmaq_f64(vnegq_f64(v_2qg2), v_qq1g, x);
            fr = vdivq_f64(vmulq_f64(v_pi, num_r), s);
            fi = vdivq_f64(vmulq_f64(v_mpi, vmulq_f64(t, t)), s);
        }
        if (p.control_off) {
            vst1q_f64(re.data() + k, vmulq_f64(v_pref, fr));
            vst1q_f64(im.data() + k, vmulq_f64(v_pref, fi));
            continue;
        }
        const float64x2_t delta = vsubq_f64(w, v_res_d);
        const float64x2_t dr = vfmsq_f64(delta, v_a, fr);
        const float64x2_t di = vfmsq_f64(v_gcb, v_a, fi);
        const float64x2_t nr = vfmsq_f64(vmulq_f64(fr, delta), fi, v_gcb);
        const float64x2_t ni = vfmaq_f64(vmulq_f64(fi, delta), fr, v_gcb);
        const float64x2_t den = vfmaq_f64(vmulq_f64(di, di), dr, dr);
        const float64x2_t out_r = vfmaq_f64(vmulq_f64(ni, di), nr, dr);
        const float64x2_t out_i = vfmsq_f64(vmulq_f64(ni, dr), nr, di);
        vst1q_f64(re.data() + k, vmulq_f64(v_pref, vdivq_f64(out_r, den)));
        vst1q_f64(im.data() + k, vmulq_f64(v_pref, vdivq_f64(out_i, den)));
    }
    if (k < omega1.size())
        chi_grid_scalar(p, omega1.subspan(k), re.subspan(k), im.subspan(k));
}

}  // namespace fanoeit::kernels

#endif  // aarch64
