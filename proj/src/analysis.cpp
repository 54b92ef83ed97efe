#include "fanoeit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "fanoeit/errors.hpp"

namespace fanoeit {

namespace {

constexpr double pi = std::numbers::pi;

// Absorption relative to the control-off medium at the same frequency;
// > threshold means outside the window.
double absorption_ratio(double omega1, const AtomicSystem& sys,
                        const FieldConfig& field, const FieldConfig& field_off) {
    const double im = chi(omega1, sys, field).imag();
    const double im_ref = chi(omega1, sys, field_off).imag();
    if (!(im_ref > 0.0)) return std::numeric_limits<double>::infinity();
    return im / im_ref;
}

// Root of Re chi near the two-photon resonance: the exact transparency point.
double measure_center(const AtomicSystem& sys, const FieldConfig& field,
                      double guess, double bracket) {
    auto re = [&](double w) { return chi(w, sys, field).real(); };
    double lo = guess - bracket, hi = guess + bracket;
    double flo = re(lo), fhi = re(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) return guess;  // no crossing resolved; fall back
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = re(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// First crossing of the absorption ratio above `threshold`, walking outward
// from the center in direction `sign`; returns the bisected edge frequency.
double find_edge(const AtomicSystem& sys, const FieldConfig& field,
                 const FieldConfig& field_off, double center, double sign,
                 double step0, double limit, double threshold) {
    double prev = 0.0;
    double h = step0;
    while (true) {
        const double w = center + sign * h;
        if (sign * (w - limit) >= 0.0)
            throw numerical_error(
                "find_window: no threshold crossing inside the grid span; widen "
                "the grid beyond " + std::to_string(limit));
        if (absorption_ratio(w, sys, field, field_off) > threshold) break;
        prev = h;
        h *= 2.0;
    }
    double lo = prev, hi = h;  // ratio(center + sign*lo) <= t < ratio(center + sign*hi)
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (absorption_ratio(center + sign * mid, sys, field, field_off) > threshold)
            hi = mid;
        else
            lo = mid;
    }
    return center + sign * 0.5 * (lo + hi);
}

}  // namespace

WindowReport find_window(const SusceptibilitySpectrum& spec, const AtomicSystem& sys,
                         const FieldConfig& field, double threshold_fraction) {
    sys.validate();
    field.validate();
    if (!(field.eps2 > 0.0))
        throw invalid_input("find_window: needs a spectrum computed with eps2 > 0");
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
        throw invalid_input("find_window: threshold_fraction must lie in (0, 1)");
    if (spec.grid.empty() || spec.grid.size() != spec.chi.size())
        throw invalid_input("find_window: malformed spectrum");

    FieldConfig field_off = field;
    field_off.eps2 = 0.0;

    const double guess = two_photon_resonance(sys, field);
    if (guess < spec.grid.front() || guess > spec.grid.back())
        throw invalid_input("find_window: two-photon resonance outside the grid");

    const double w_est = window_width_estimate(sys, field.eps2);
    // The transparency point sits at the two-photon resonance; keep the
    // bracket well inside the window (the small-coupling estimate can
    // overshoot a saturated window by orders of magnitude) and away from the
    // other Re-chi zeros of the Fano structure.
    const double bracket =
        std::max(std::min(0.25 * w_est, 10.0 * sys.gamma),
                 8.0 * std::abs(guess) * std::numeric_limits<double>::epsilon());
    const double center = measure_center(sys, field, guess, bracket);

    const double step0 = std::max(w_est / 128.0, 4.0 * std::abs(center) *
                                                     std::numeric_limits<double>::epsilon());
    const double hi_edge = find_edge(sys, field, field_off, center, +1.0, step0,
                                     spec.grid.back(), threshold_fraction);
    const double lo_edge = find_edge(sys, field, field_off, center, -1.0, step0,
                                     spec.grid.front(), threshold_fraction);

    WindowReport report;
    report.center = center;
    report.width = hi_edge - lo_edge;
    report.width_over_gamma = report.width / sys.gamma;
    report.threshold_used = threshold_fraction;

    const auto lo_it = std::upper_bound(spec.grid.begin(), spec.grid.end(), lo_edge);
    const auto hi_it = std::lower_bound(spec.grid.begin(), spec.grid.end(), hi_edge);
    const auto interior = hi_it - lo_it;
    if (interior < 20) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "find_window: only " << interior << " grid points inside the window ["
            << lo_edge << ", " << hi_edge << "]; request a grid span of +-"
            << 2.0 * std::max(hi_edge - center, center - lo_edge)
            << " a.u. about " << center << " with >= 20 points inside";
        throw numerical_error(msg.str());
    }

    report.n_g_center = group_index(center, sys, field, DerivativeMode::analytic);
    report.dispersion_slope = chi_derivative(center, sys, field).real();
    if (!sys.flat_continuum)
        report.fano_zero = (sys.e_a - sys.e_b) - sys.q * sys.gamma;
    return report;
}

SweepVariable sweep_variable_from_name(const std::string& name) {
    if (name == "eps2") return SweepVariable::eps2;
    if (name == "q") return SweepVariable::q;
    throw invalid_input("unknown sweep variable '" + name + "' (eps2|q)");
}

std::string sweep_variable_name(SweepVariable v) {
    return v == SweepVariable::eps2 ? "eps2" : "q";
}

namespace {

// Grid and window measurement for one sweep point; spans follow the
// predicted width so five-decade sweeps stay resolved.
WindowReport window_for(const AtomicSystem& sys, const FieldConfig& base,
                        SweepVariable variable, double value) {
    AtomicSystem s = sys;
    FieldConfig f = base;
    if (variable == SweepVariable::eps2) {
        if (!(value > 0.0)) throw invalid_input("sweep: eps2 values must be > 0");
        f.eps2 = value;
    } else {
        if (!(value > 0.0)) throw invalid_input("sweep: q values must be > 0");
        s.q = value;
    }
    const double center = two_photon_resonance(s, f);
    const double w_est = std::max(window_width_estimate(s, f.eps2),
                                  1e3 * std::abs(center) *
                                      std::numeric_limits<double>::epsilon());
    std::vector<double> grid;
    grid.reserve(4001);
    const double outer = std::max(50.0 * s.gamma, 10.0 * w_est);
    const double mid = std::max(s.gamma, 2.0 * w_est);
    auto append = [&](double halfwidth, int n, bool odd) {
        const int count = odd ? n | 1 : n & ~1;
        const auto uniform = make_uniform_grid(center, halfwidth, count);
        grid.insert(grid.end(), uniform.begin(), uniform.end());
    };
    append(outer, 1333, true);
    append(mid, 1334, false);
    append(w_est, 1334, false);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    f.probe_grid = std::move(grid);

    const SusceptibilitySpectrum spec = compute_spectrum(s, f);
    return find_window(spec, s, f);
}

}  // namespace

SweepResult width_scaling_sweep(const AtomicSystem& sys, const FieldConfig& base_field,
                                SweepVariable variable,
                                const std::vector<double>& values) {
    sys.validate();
    // A power-law fit needs at least 4 surviving points; the reference
    // four-point q sweep {20,40,80,160} must stay admissible.
    if (values.size() < 4)
        throw invalid_input("width_scaling_sweep: need at least 4 sweep values");
    if (variable == SweepVariable::eps2) {
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        // two decades of eps2 = four decades of predicted (quadratic) width
        if (!(*hi / *lo >= 100.0 * (1.0 - 1e-12)))
            throw invalid_input("width_scaling_sweep: eps2 sweep must span at least "
                                "four decades of predicted width (eps2 max/min >= 100)");
    }

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    SweepResult result;
    result.points.resize(sorted.size());
    std::vector<std::future<void>> tasks;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        tasks.push_back(std::async(std::launch::async, [&, k] {
            SweepPoint& pt = result.points[k];
            pt.value = sorted[k];
            try {
                pt.report = window_for(sys, base_field, variable, sorted[k]);
                pt.ok = true;
            } catch (const std::exception& e) {
                pt.error = e.what();
            }
        }));
    }
    for (auto& t : tasks) t.get();
    for (const auto& pt : result.points)
        if (!pt.ok)
            throw numerical_error("width_scaling_sweep: unresolved window at " +
                                  sweep_variable_name(variable) + " = " +
                                  std::to_string(pt.value) + ": " + pt.error);

    // Log-log least squares over the narrow-structure regime.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    std::size_t n_used = 0;
    for (auto& pt : result.points) {
        if (pt.report.width > 10.0 * sys.gamma) continue;
        pt.used_in_fit = true;
        const double x = std::log(pt.value);
        const double y = std::log(pt.report.width);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
        ++n_used;
    }
    if (n_used < 4)
        throw numerical_error("width_scaling_sweep: fewer than 4 points survive the "
                              "width <= 10 gamma exclusion; fit aborted");
    const double nd = static_cast<double>(n_used);
    const double sxx_c = sxx - sx * sx / nd;
    const double sxy_c = sxy - sx * sy / nd;
    const double syy_c = syy - sy * sy / nd;
    result.fit.swept_variable = variable;
    result.fit.exponent = sxy_c / sxx_c;
    result.fit.prefactor = std::exp(sy / nd - result.fit.exponent * sx / nd);
    result.fit.r_squared = syy_c > 0.0 ? (sxy_c * sxy_c) / (sxx_c * syy_c) : 1.0;
    return result;
}

double discrete_limit_width(double gamma_upper, double eps2) {
    if (!(gamma_upper > 0.0))
        throw invalid_input("discrete_limit_width: relaxation rate must be > 0");
    return eps2 * eps2 / gamma_upper;
}

double flat_continuum_width(const AtomicSystem& sys, double eps2, Which which) {
    sys.validate();
    if (!(eps2 >= 0.0)) throw invalid_input("flat_continuum_width: eps2 must be >= 0");
    const double b = which == Which::b ? sys.b_b : sys.b_c;
    return 2.0 * pi * eps2 * eps2 * b * b / 4.0;
}

}  // namespace fanoeit
