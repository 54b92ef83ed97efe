#include "fanoeit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "fanoeit/errors.hpp"

namespace fanoeit {

namespace {

constexpr double pi = std::numbers::pi;

// Gauss-Kronrod 7-15 nodes and weights (positive half; the center node last).
constexpr double kron_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kron_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double gauss_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Segment {
    double a, b;
    double integral;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gk15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double ik = 0.0, ig = 0.0;
    for (int n = 0; n < 7; ++n) {
        const double vp = f(mid + half * kron_x[n]);
        const double vm = f(mid - half * kron_x[n]);
        ik += kron_w[n] * (vp + vm);
        if (n % 2 == 1) ig += gauss_w[n / 2] * (vp + vm);
    }
    const double vc = f(mid);
    ik = (ik + kron_w[7] * vc) * half;
    ig = (ig + gauss_w[3] * vc) * half;
    return {a, b, ik, std::abs(ik - ig)};
}

template <typename F>
double integrate_adaptive(const F& f, const std::vector<double>& breakpoints,
                          double abs_tol, double rel_tol, int max_intervals) {
    std::priority_queue<Segment> heap;
    double total = 0.0, err = 0.0;
    int count = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        Segment s = gk15(f, breakpoints[i], breakpoints[i + 1]);
        total += s.integral;
        err += s.error;
        heap.push(s);
        ++count;
    }
    auto tol = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
    while (err > tol()) {
        if (count >= max_intervals || heap.empty())
            throw quadrature_error("r_quadrature: adaptive refinement hit the "
                                   "interval budget before convergence", err);
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw quadrature_error(
                "r_quadrature: interval collapsed below double resolution", err);
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        err += left.error + right.error - worst.error;
        err = std::max(err, 0.0);
        heap.push(left);
        heap.push(right);
        ++count;
    }
    return total;
}

// Dimensionless Fano shape and derivatives; v = E - E_a.
struct Shape {
    double q, g;
    bool flat;
    double value(double v) const {
        if (flat) return 1.0;
        const double t = v + q * g;
        return t * t / (v * v + g * g);
    }
    double d1(double v) const {
        if (flat) return 0.0;
        const double s = v * v + g * g;
        return 2.0 * g * (v + q * g) * (g - q * v) / (s * s);
    }
    double d2(double v) const {
        if (flat) return 0.0;
        const double s = v * v + g * g;
        return 2.0 * g *
               ((g * (1.0 - q * q) - 2.0 * q * v) * s -
                4.0 * v * (v + q * g) * (g - q * v)) / (s * s * s);
    }
};

}  // namespace

cd r_quadrature(double omega1, const AtomicSystem& sys, Which i, Which j,
                const QuadratureSettings& settings) {
    sys.validate();
    if (!(settings.abs_tol > 0.0) || !(settings.rel_tol > 0.0) ||
        settings.rel_tol >= 1.0)
        throw invalid_input("r_quadrature: tolerances must lie in (0, 1)");
    if (!(settings.pole_exclusion_halfwidth > 0.0))
        throw invalid_input("r_quadrature: pole_exclusion_halfwidth must be > 0");

    // Work in v = E - E_a so the pole lands at exactly the same
    // floating-point detuning the closed form uses.
    const double pole = omega1 - autoionizing_resonance(sys);  // E_b + omega1 - E_a
    const double lower = settings.lower_limit;
    const bool finite_lower = std::isfinite(lower);
    const double lower_v = lower - sys.e_a;
    if (finite_lower && pole - lower_v < settings.pole_exclusion_halfwidth)
        throw invalid_input(
            "r_quadrature: pole within the exclusion halfwidth of the lower "
            "limit (threshold regime; the flat-tail profile is invalid there)");

    const double bb = (i == Which::b ? sys.b_b : sys.b_c) *
                      (j == Which::b ? sys.b_b : sys.b_c);
    const Shape f{sys.q, sys.gamma, sys.flat_continuum};
    const double f_pole = f.value(pole);
    const double f1_pole = f.d1(pole);
    const double f2_pole = f.d2(pole);

    // Span symmetric about the pole, truncated at the threshold when asked
    // for; the constant tails of the profile cancel pairwise, which is what
    // gives the improper integral its principal-value meaning at infinity.
    const double halfspan =
        finite_lower ? pole - lower_v
                     : std::max(1.0, 2.0 * std::abs(pole) + 1e4 * sys.gamma);
    const double lo = pole - halfspan;
    const double hi = pole + halfspan;

    // Regular remainder after pole subtraction. The direct quotient loses
    // precision right at the pole; a short Taylor form takes over there.
    const double taylor_halfwidth =
        1e-3 * (sys.flat_continuum ? halfspan : sys.gamma);
    auto remainder = [&](double v) {
        const double d = v - pole;
        if (std::abs(d) < taylor_halfwidth)
            return -f1_pole - 0.5 * f2_pole * d;
        return (f.value(v) - f_pole) / (-d);
    };

    std::vector<double> bp = {lo, hi, pole - taylor_halfwidth, pole + taylor_halfwidth};
    if (!sys.flat_continuum) {
        bp.push_back(0.0);  // resonance center
        for (double scale : {1.0, 10.0, 100.0, 1e4}) {
            bp.push_back(-scale * sys.gamma);
            bp.push_back(scale * sys.gamma);
        }
    }
    for (double m : {1e3, 1e6}) {
        bp.push_back(pole - m * taylor_halfwidth);
        bp.push_back(pole + m * taylor_halfwidth);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::remove_if(bp.begin(), bp.end(),
                            [&](double v) { return v < lo || v > hi; }),
             bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

    const double regular = integrate_adaptive(remainder, bp, settings.abs_tol,
                                              settings.rel_tol,
                                              settings.max_intervals);

    // Exact log term of the subtracted simple pole (zero for a symmetric span)
    // plus the -i pi residue term from the i eta prescription.
    const double log_term = f_pole * std::log((pole - lo) / (hi - pole));
    return bb * cd(regular + log_term, -pi * f_pole);
}

}  // namespace fanoeit
