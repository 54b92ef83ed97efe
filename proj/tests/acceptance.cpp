// Acceptance suite: the quantitative claims behind the five reference
// scenarios, each checked at its stated tolerance. Prints one PASS/FAIL line
// per criterion; the exit code is the number of failures.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fanoeit/analysis.hpp"
#include "fanoeit/constants.hpp"
#include "fanoeit/params.hpp"
#include "fanoeit/propagation.hpp"
#include "fanoeit/quadrature.hpp"
#include "fanoeit/spectrum.hpp"
#include "fanoeit/stationary.hpp"
#include "fanoeit/units.hpp"

using namespace fanoeit;

namespace {

constexpr double pi = std::numbers::pi;

struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
};

char buf[512];

std::string fmt(const char* format, auto... args) {
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

WindowReport window_of(Preset p) {
    const auto [sys, field] = paper_preset(p);
    const auto spec = compute_spectrum(sys, field);
    return find_window(spec, sys, field);
}

// --- criterion 1: control-off peaks ---------------------------------------
bool c1_fig1_peaks(std::string& detail) {
    const auto [sys, field] = paper_preset(Preset::fig1);
    const auto spec = compute_spectrum(sys, field);
    double max_im = 0.0, max_abs_re = 0.0;
    for (const auto& v : spec.chi) {
        max_im = std::max(max_im, v.imag());
        max_abs_re = std::max(max_abs_re, std::abs(v.real()));
    }
    const double analytic =
        2.0 * pi * sys.density_n * pi * sys.b_b * sys.b_b * (1.0 + sys.q * sys.q);
    const bool ok = max_abs_re < 1e-9 && max_im < 1e-9 &&
                    std::abs(max_im / analytic - 1.0) < 0.01;
    detail = fmt("max|Re chi| = %.3e, max Im chi = %.3e (both < 1e-9), "
                 "analytic peak %.3e matched to %.2e",
                 max_abs_re, max_im, analytic, std::abs(max_im / analytic - 1.0));
    return ok;
}

// --- criterion 2: dark-state exactness ------------------------------------
bool c2_dark_state(std::string& detail) {
    bool ok = true;
    double worst = 0.0;
    for (auto p : {Preset::fig2, Preset::fig3, Preset::fig4, Preset::fig5}) {
        const auto [sys, field] = paper_preset(p);
        FieldConfig off = field;
        off.eps2 = 0.0;
        double peak_off = 0.0;
        for (double w : field.probe_grid)
            peak_off = std::max(peak_off, std::abs(chi(w, sys, off)));
        const double center_abs =
            std::abs(chi(two_photon_resonance(sys, field), sys, field));
        worst = std::max(worst, center_abs / peak_off);
        ok = ok && center_abs < 1e-15 * peak_off;
    }
    detail = fmt("worst |chi(Delta=0)| / control-off peak = %.3e (< 1e-15)", worst);
    return ok;
}

// --- criterion 3: window widths -------------------------------------------
bool c3_window_widths(std::string& detail) {
    const double w2 = window_of(Preset::fig2).width_over_gamma;
    const double w3 = window_of(Preset::fig3).width_over_gamma;
    const double w4 = window_of(Preset::fig4).width_over_gamma;
    const double w5 = window_of(Preset::fig5).width_over_gamma;
    const bool ok = w2 >= 0.2 && w2 <= 3.0 && w3 >= 3e-3 && w3 <= 3e-2 &&
                    w4 >= 3e-5 && w4 <= 3e-4 && std::abs(w4 / w5 - 1.0) < 0.10;
    detail = fmt("widths/gamma: fig2 %.3g in [0.2,3], fig3 %.3g in [3e-3,3e-2], "
                 "fig4 %.3g in [3e-5,3e-4], fig4/fig5 = %.3f (within 10%%)",
                 w2, w3, w4, w4 / w5);
    return ok;
}

// --- criterion 4: group indices -------------------------------------------
bool c4_group_indices(std::string& detail) {
    const double n2 = window_of(Preset::fig2).n_g_center;
    const double n3 = window_of(Preset::fig3).n_g_center;
    const double n4 = window_of(Preset::fig4).n_g_center;
    const double n5 = window_of(Preset::fig5).n_g_center;
    const bool ok = n2 >= 1.05 && n2 <= 1.3 && n3 >= 3.0 && n3 <= 60.0 &&
                    n4 >= 300.0 && n4 <= 6000.0 && n5 >= 3e4 && n5 <= 3e5;
    detail = fmt("n_g: fig2 %.4g in [1.05,1.3], fig3 %.4g in [3,60], "
                 "fig4 %.4g in [300,6000], fig5 %.4g in [3e4,3e5]",
                 n2, n3, n4, n5);
    return ok;
}

// --- criterion 5: fig5 vs fig4 magnitude ----------------------------------
bool c5_fig5_magnitude(std::string& detail) {
    auto peak_im = [](Preset p) {
        const auto [sys, field] = paper_preset(p);
        const auto spec = compute_spectrum(sys, field);
        double peak = 0.0;
        for (const auto& v : spec.chi) peak = std::max(peak, std::abs(v.imag()));
        return peak;
    };
    const double ratio = peak_im(Preset::fig5) / peak_im(Preset::fig4);
    detail = fmt("peak |Im chi| ratio fig5/fig4 = %.2f (= 100 within 15%%)", ratio);
    return std::abs(ratio / 100.0 - 1.0) < 0.15;
}

// --- criterion 6: scaling laws --------------------------------------------
bool c6_scaling_laws(std::string& detail) {
    const auto [sys, field] = paper_preset(Preset::fig4);
    const SweepResult eps_fit = width_scaling_sweep(
        sys, field, SweepVariable::eps2,
        {1e-8, 3.1622776601683795e-8, 1e-7, 3.1622776601683795e-7, 1e-6});
    const SweepResult q_fit = width_scaling_sweep(sys, field, SweepVariable::q,
                                                  {20.0, 40.0, 80.0, 160.0});
    const bool eps_ok = std::abs(eps_fit.fit.exponent - 2.0) <= 0.05;
    const bool q_ok = std::abs(q_fit.fit.exponent - 2.0) <= 0.2;
    std::string eps_note;
    if (!eps_ok) {
        // Diagnostic only: between the two smallest values (widths << gamma)
        // the local slope is clean; the full-range fit is dragged by the
        // eps2 = 1e-6 point whose measured window (~0.9 gamma) sits outside
        // the narrow-window regime.
        const auto& p0 = eps_fit.points[0].report;
        const auto& p1 = eps_fit.points[1].report;
        const double local = std::log(p1.width / p0.width) /
                             std::log(eps_fit.points[1].value / eps_fit.points[0].value);
        eps_note = fmt(" <- fails: window at eps2 = 1e-6 is ~0.9 gamma, beyond the "
                       "narrow-window regime; the width << gamma local slope is %.4f",
                       local);
    }
    detail = fmt("eps2 exponent %.4f (required 2.00 +- 0.05)%s; "
                 "q exponent %.4f (required 2.0 +- 0.2)",
                 eps_fit.fit.exponent, eps_note.c_str(), q_fit.fit.exponent);
    return eps_ok && q_ok;
}

// --- criterion 7: oracle equivalence --------------------------------------
bool c7_oracle_equivalence(std::string& detail) {
    bool ok = true;
    double worst_quad = 0.0, worst_steady = 0.0;
    for (auto p : {Preset::fig1, Preset::fig2, Preset::fig3, Preset::fig4, Preset::fig5}) {
        const auto [sys, field] = paper_preset(p);
        const double center = two_photon_resonance(sys, field);
        const double w_est = field.eps2 > 0.0
                                 ? window_width_estimate(sys, field.eps2)
                                 : sys.gamma;

        // 21 detunings: 11 spanning the window, 10 into the +-5 gamma wings
        std::vector<double> points;
        for (int k = -5; k <= 5; ++k)
            points.push_back(center + 0.24 * w_est * static_cast<double>(k));
        for (double f : {0.2, 0.5, 1.0, 2.5, 5.0}) {
            points.push_back(center - f * sys.gamma);
            points.push_back(center + f * sys.gamma);
        }

        QuadratureSettings inf_set;
        QuadratureSettings thr_set;
        thr_set.lower_limit = 0.0;
        FieldConfig off = field;
        off.eps2 = 0.0;
        double peak_off = 0.0;
        for (double w : field.probe_grid)
            peak_off = std::max(peak_off, std::abs(chi(w, sys, off)));

        for (double w : points) {
            const cd closed = r_closed(w, sys, Which::b, Which::b);
            const double d_inf =
                std::abs(r_quadrature(w, sys, Which::b, Which::b, inf_set) - closed) /
                std::abs(closed);
            const double d_thr =
                std::abs(r_quadrature(w, sys, Which::b, Which::b, thr_set) - closed) /
                std::abs(closed);
            const double d_ss =
                std::abs(chi_steady(sys, field, w) - chi(w, sys, field)) / peak_off;
            worst_quad = std::max({worst_quad, d_inf, d_thr});
            worst_steady = std::max(worst_steady, d_ss);
            ok = ok && d_inf < 1e-6 && d_thr < 1e-6 && d_ss < 0.02;
        }
    }
    detail = fmt("worst quadrature deviation %.2e (< 1e-6, thresholds 0 and -inf), "
                 "worst eta-extrapolated steady deviation %.4f%% of the control-off "
                 "peak (< 2%%)",
                 worst_quad, 100.0 * worst_steady);
    return ok;
}

// --- criterion 8: property suite ------------------------------------------
bool c8_property_suite(std::string& detail) {
    bool ok = true;
    std::string why;

    // Im chi >= 0 pointwise with gamma_cb = 0
    for (auto p : {Preset::fig1, Preset::fig2, Preset::fig3, Preset::fig4, Preset::fig5}) {
        const auto [sys, field] = paper_preset(p);
        const auto spec = compute_spectrum(sys, field);
        for (const auto& v : spec.chi)
            if (!(v.imag() >= -1e-18)) {
                ok = false;
                why += " Im-chi<0;";
            }
    }

    // factorization identity to machine precision
    {
        const auto [sys, field] = paper_preset(Preset::fig2);
        for (std::size_t k = 0; k < field.probe_grid.size(); k += 23) {
            const double w = field.probe_grid[k];
            const cd lhs = r_closed(w, sys, Which::b, Which::c) *
                           r_closed(w, sys, Which::c, Which::b);
            const cd rhs = r_closed(w, sys, Which::b, Which::b) *
                           r_closed(w, sys, Which::c, Which::c);
            if (std::abs(lhs - rhs) > 4e-15 * std::abs(rhs)) {
                ok = false;
                why += " factorization;";
                break;
            }
        }
    }

    // Fano zero of Im R at x' = -q gamma
    {
        const auto [sys, field] = paper_preset(Preset::fig2);
        const double w_fano = (sys.e_a - sys.e_b) - sys.q * sys.gamma;
        const cd at_zero = r_closed(w_fano, sys, Which::b, Which::b);
        const cd at_res = r_closed(sys.e_a - sys.e_b, sys, Which::b, Which::b);
        if (!(std::abs(at_zero.imag()) < 1e-12 * std::abs(at_res.imag()))) {
            ok = false;
            why += " fano-zero;";
        }
    }

    // analytic vs finite-difference group index to 1e-6 relative
    {
        const auto [sys, field] = paper_preset(Preset::fig2);
        const double center = two_photon_resonance(sys, field);
        const double width = window_width_estimate(sys, field.eps2);
        for (int k = 0; k < 50; ++k) {
            const double inner =
                center + width * 0.25 * (static_cast<double>(k) / 49.0 - 0.5);
            const double wing =
                center + 2.5 * width +
                (50.0 * sys.gamma - 2.5 * width) * static_cast<double>(k) / 49.0;
            for (double w : {inner, wing}) {
                const double a = group_index(w, sys, field, DerivativeMode::analytic);
                const double f =
                    group_index(w, sys, field, DerivativeMode::finite_difference);
                if (std::abs(a - f) > 1e-6 * std::max({std::abs(a), std::abs(f), 1.0})) {
                    ok = false;
                    why += " n_g-derivative;";
                }
            }
        }
    }

    // q -> 1e4 discrete-state limit to 1e-3
    {
        auto [sys, field] = paper_preset(Preset::fig1);
        sys.q = 1e4;
        sys.b_b = sys.b_c = 2.0 / sys.q;
        const double w_res = autoionizing_resonance(sys);
        for (int k = -10; k <= 10; ++k) {
            const double x = static_cast<double>(k) * sys.gamma;
            const cd lorentzian = sys.b_b * sys.b_c * pi * sys.q * sys.q * sys.gamma *
                                  cd(x, -sys.gamma) / (x * x + sys.gamma * sys.gamma);
            const cd r = r_closed(w_res + x, sys, Which::b, Which::c);
            if (std::abs(r - lorentzian) > 1e-3 * std::abs(lorentzian)) {
                ok = false;
                why += " discrete-limit;";
                break;
            }
        }
    }

    detail = ok ? "Im chi >= 0; R_bc R_cb = R_bb R_cc; Im R zero at x' = -q gamma; "
                  "n_g derivatives agree to 1e-6; q=1e4 Lorentzian match to 1e-3"
                : "failed:" + why;
    return ok;
}

// --- criterion 9: propagation consistency ----------------------------------
bool c9_propagation(std::string& detail) {
    const double length = units::cm_to_au_length(1.0);
    bool ok = true;
    std::string parts;
    for (auto p : {Preset::fig3, Preset::fig4}) {
        const auto [sys, field] = paper_preset(p);
        const ProbePulse pulse = make_probe_for_medium(sys, field, length);
        const PropagationResult out = propagate(pulse, sys, field, length);
        const double predicted = delay_prediction(sys, field, length);
        const double rel = std::abs(out.delay / predicted - 1.0);
        ok = ok && rel < 0.10 && out.transmitted_energy_fraction <= 1.0 + 1e-12;
        parts += fmt("%s delay %.4g vs predicted %.4g (%.1f%%), energy %.6f; ",
                     preset_name(p).c_str(), out.delay, predicted, 100.0 * rel,
                     out.transmitted_energy_fraction);
    }
    const ProbePulse vac = make_gaussian_probe(0.3, 1e10, 1e10 / 256.0, 1 << 12, 8e10);
    const PropagationResult vac_out = propagate_vacuum(vac, length);
    ok = ok && std::abs(vac_out.delay) < vac.grid_dt &&
         vac_out.transmitted_energy_fraction <= 1.0 + 1e-12;
    parts += fmt("vacuum delay %.2e (grid dt %.2e)", vac_out.delay, vac.grid_dt);
    detail = parts;
    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "control-off susceptibility peaks", c1_fig1_peaks},
        {2, "dark-state exactness", c2_dark_state},
        {3, "transparency-window widths", c3_window_widths},
        {4, "group indices at window center", c4_group_indices},
        {5, "fig5/fig4 magnitude ratio", c5_fig5_magnitude},
        {6, "width scaling laws", c6_scaling_laws},
        {7, "oracle equivalence", c7_oracle_equivalence},
        {8, "property suite", c8_property_suite},
        {9, "propagation consistency", c9_propagation},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %d: %s - %s\n", pass ? "PASS" : "FAIL", c.id,
                    c.name, detail.c_str());
        if (!pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
