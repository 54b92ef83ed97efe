#pragma once

#include <cstddef>
#include <span>

#include "fanoeit/params.hpp"

namespace fanoeit::kernels {

/// Precomputed coefficients for the per-frequency susceptibility evaluation.
/// Frequencies enter only through x = omega - res_x and delta = omega -
/// res_delta; keeping the two reference frequencies explicit makes the
/// two-photon dark state land on an exact floating-point zero.
struct ChiParams {
    double res_x = 0.0;      // E_a - E_b
    double res_delta = 0.0;  // (E_c + omega2) - E_b
    double gamma = 0.0;
    double q = 0.0;
    double gamma_cb = 0.0;
    double coupling = 0.0;   // eps2^2 b_c^2 / 4
    double prefactor = 0.0;  // -2 pi N b_b^2
    bool flat = false;
    bool control_off = false;  // eps2 == 0: chi = prefactor * F, no division

    static ChiParams from(const AtomicSystem& sys, const FieldConfig& field);
};

using ChiGridFn = void (*)(const ChiParams&, std::span<const double> omega1,
                           std::span<double> re, std::span<double> im);

// Reference kernel and the SIMD variants. All must agree to rounding noise;
// tests/test_kernels.cpp enforces the equivalence.
void chi_grid_scalar(const ChiParams&, std::span<const double> omega1,
                     std::span<double> re, std::span<double> im);
#if defined(__x86_64__) || defined(_M_X64)
void chi_grid_avx2(const ChiParams&, std::span<const double> omega1,
                   std::span<double> re, std::span<double> im);
#endif
#if defined(__aarch64__)
void chi_grid_neon(const ChiParams&, std::span<const double> omega1,
                   std::span<double> re, std::span<double> im);
#endif

/// Kernel selected at startup from CPU features; FANOEIT_KERNEL=scalar (or
/// avx2/neon) overrides. Unsupported requests fall back to scalar.
ChiGridFn chi_grid_fn();
const char* chi_grid_impl_name();

/// Evaluate chi over a grid with the selected kernel.
void chi_grid(const ChiParams&, std::span<const double> omega1,
              std::span<double> re, std::span<double> im);

}  // namespace fanoeit::kernels
