#pragma once

#include <complex>

#include "fanoeit/params.hpp"

namespace fanoeit {

using cd = std::complex<double>;

enum class Which { b, c };

/// A single response sample, tagged with the probe frequency it belongs to.
struct ComplexResponse {
    cd value;
    double omega1 = 0.0;
};

/// Squared bound-continuum dipole element |d_iE|^2 at continuum energy e:
/// B_i^2 (e - E_a + q gamma)^2 / ((e - E_a)^2 + gamma^2).
/// In flat-continuum mode this is B_i^2 identically.
double fano_profile(double e, const AtomicSystem& sys, Which which);

/// d/de of fano_profile.
double fano_profile_derivative(double e, const AtomicSystem& sys, Which which);

/// Resonance factor common to all R_ij, as a function of
/// x = E_b + hbar*omega1 - E_a:
///
///   F(x) = pi * [gamma x (q^2-1) - 2 q gamma^2 - i (x + q gamma)^2]
///          / (x^2 + gamma^2)
///        = -i pi + pi gamma (q - i)^2 / (x + i gamma)
///
/// Flat-continuum mode returns -i pi. Im F <= 0 always. The sign of the
/// 2 q gamma^2 term is fixed by evaluating the defining integral of the
/// profile against 1/(E_b + hbar omega1 - E + i eta); see also the
/// quadrature cross-check tests.
cd resonance_factor(double x, const AtomicSystem& sys);

/// dF/dx = -pi gamma (q - i)^2 / (x + i gamma)^2.
cd resonance_factor_derivative(double x, const AtomicSystem& sys);

/// Closed-form R_ij(omega1) = B_i B_j F(x).
cd r_closed(double omega1, const AtomicSystem& sys, Which i, Which j);

/// Complex susceptibility of the dressed medium,
///   chi = -2 pi N [ R_bb + (eps2^2/4) R_bc R_cb / D ],
///   D   = Delta + i gamma_cb - (eps2^2/4) R_cc,
///   Delta = E_b + hbar omega1 - E_c - hbar omega2,
/// evaluated in the factorized form -2 pi N B_b^2 F (Delta + i gamma_cb) / D
/// so the two-photon dark state comes out exactly zero.
cd chi(double omega1, const AtomicSystem& sys, const FieldConfig& field);

/// Term-by-term evaluation of the same expression; used to cross-check the
/// factorized route.
cd chi_termwise(double omega1, const AtomicSystem& sys, const FieldConfig& field);

/// d chi / d omega1 in closed form: -2 pi N B_b^2 (F' g^2 - a F^2) / D^2
/// with g = Delta + i gamma_cb and a = eps2^2 B_c^2 / 4.
cd chi_derivative(double omega1, const AtomicSystem& sys, const FieldConfig& field);

enum class DerivativeMode { analytic, finite_difference };

/// Group index n_g = 1 + (omega1/2) d Re chi / d omega1.
/// finite_difference uses a Richardson-extrapolated central difference with
/// step fd_step (0 = 1e-3 of the local feature scale) and reports step
/// underflow if omega1 +- step is not representable.
double group_index(double omega1, const AtomicSystem& sys,
                   const FieldConfig& field, DerivativeMode mode,
                   double fd_step = 0.0);

/// Small-detuning width scale of the transparency structure at 50%
/// absorption: 2 pi q a sqrt(q^2 + 8), a = eps2^2 B_c^2/4 (flat mode:
/// 2 pi a). Used to seed window searches and grids, not as a measurement.
double window_width_estimate(const AtomicSystem& sys, double eps2);

}  // namespace fanoeit
