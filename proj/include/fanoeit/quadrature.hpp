#pragma once

#include <complex>
#include <limits>

#include "fanoeit/params.hpp"
#include "fanoeit/susceptibility.hpp"

namespace fanoeit {

/// Controls for the principal-value quadrature of the continuum integral.
/// lower_limit = 0 is the physical ionization threshold; -infinity selects
/// the symmetric-limits evaluation behind the closed form.
struct QuadratureSettings {
    double abs_tol = 1e-13;
    double rel_tol = 1e-9;
    double pole_exclusion_halfwidth = 1e-3;  // a.u.
    double lower_limit = -std::numeric_limits<double>::infinity();
    int max_intervals = 40000;
};

/// R_ij(omega1) by numerical principal value: the profile integrated against
/// 1/(E_b + hbar omega1 - E + i eta), eta -> 0+. The pole is removed by
/// analytic subtraction (regular remainder integrated adaptively, exact log
/// term, -i pi times the residue). The integration span is symmetric about
/// the pole, truncated below at lower_limit when finite; the constant tails
/// of the profile cancel pairwise, which is what gives the improper integral
/// its principal-value meaning at infinity.
cd r_quadrature(double omega1, const AtomicSystem& sys, Which i, Which j,
                const QuadratureSettings& settings = {});

}  // namespace fanoeit
