// AVX2 variant of the chi grid kernel: four probe frequencies per iteration.
// Compiled with -mavx2 -mfma; selected at runtime (see kernels_dispatch.cpp).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <numbers>

#include "fanoeit/errors.hpp"
#include "fanoeit/kernels.hpp"

namespace fanoeit::kernels {

void chi_grid_avx2(const ChiParams& p, std::span<const double> omega1,
                   std::span<double> re, std::span<double> im) {
    if (re.size() != omega1.size() || im.size() != omega1.size())
        throw invalid_input("chi_grid: output spans must match the grid size");
    constexpr double pi = std::numbers::pi;
    const double g = p.gamma;
    const double q = p.q;

    const __m256d v_pi = _mm256_set1_pd(pi);
    const __m256d v_res_x = _mm256_set1_pd(p.res_x);
    const __m256d v_res_d = _mm256_set1_pd(p.res_delta);
    const __m256d v_g = _mm256_set1_pd(g);
    const __m256d v_qg = _mm256_set1_pd(q * g);
    const __m256d v_qq1g = _mm256_set1_pd(g * (q * q - 1.0));
    const __m256d v_2qg2 = _mm256_set1_pd(2.0 * q * g * g);
    const __m256d v_gcb = _mm256_set1_pd(p.gamma_cb);
    const __m256d v_a = _mm256_set1_pd(p.coupling);
    const __m256d v_pref = _mm256_set1_pd(p.prefactor);
    const __m256d v_zero = _mm256_setzero_pd();
    const __m256d v_mpi = _mm256_set1_pd(-pi);

    std::size_t k = 0;
    const std::size_t n4 = omega1.size() / 4 * 4;
    for (; k < n4; k += 4) {
        const __m256d w = _mm256_loadu_pd(omega1.data() + k);
        __m256d fr, fi;
        if (p.flat) {
            fr = v_zero;
            fi = v_mpi;
        } else {
            const __m256d x = _mm256_sub_pd(w, v_res_x);
            const __m256d s = _mm256_fmadd_pd(x, x, _mm256_mul_pd(v_g, v_g));
            const __m256d t = _mm256_add_pd(x, v_qg);
            const __m256d num_r = _mm256_fmsub_pd(v_qq1g, x, v_2qg2);
            fr = _mm256_div_pd(_mm256_mul_pd(v_pi, num_r), s);
            fi = _mm256_div_pd(_mm256_mul_pd(v_mpi, _mm256_mul_pd(t, t)), s);
        }
        if (p.control_off) {
            _mm256_storeu_pd(re.data() + k, _mm256_mul_pd(v_pref, fr));
            _mm256_storeu_pd(im.data() + k, _mm256_mul_pd(v_pref, fi));
            continue;
        }
        const __m256d delta = _mm256_sub_pd(w, v_res_d);
        const __m256d dr = _mm256_fnmadd_pd(v_a, fr, delta);
        const __m256d di = _mm256_fnmadd_pd(v_a, fi, v_gcb);
        const __m256d nr = _mm256_fmsub_pd(fr, delta, _mm256_mul_pd(fi, v_gcb));
        const __m256d ni = _mm256_fmadd_pd(fr, v_gcb, _mm256_mul_pd(fi, delta));
        const __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
        const __m256d out_r = _mm256_fmadd_pd(nr, dr, _mm256_mul_pd(ni, di));
        const __m256d out_i = _mm256_fmsub_pd(ni, dr, _mm256_mul_pd(nr, di));
        _mm256_storeu_pd(re.data() + k,
                         _mm256_mul_pd(v_pref, _mm256_div_pd(out_r, den)));
        _mm256_storeu_pd(im.data() + k,
                         _mm256_mul_pd(v_pref, _mm256_div_pd(out_i, den)));
    }
    if (k < omega1.size())
        chi_grid_scalar(p, omega1.subspan(k), re.subspan(k), im.subspan(k));
}

}  // namespace fanoeit::kernels

#endif  // x86_64
