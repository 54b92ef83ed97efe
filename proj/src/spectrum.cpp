#include "fanoeit/spectrum.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <thread>

#include "fanoeit/errors.hpp"
#include "fanoeit/kernels.hpp"
#include "fanoeit/quadrature.hpp"
#include "fanoeit/stationary.hpp"

namespace fanoeit {

Method method_from_name(const std::string& name) {
    if (name == "closed") return Method::closed_form;
    if (name == "quadrature") return Method::quadrature;
    if (name == "steady") return Method::steady_state;
    throw invalid_input("unknown method '" + name + "' (closed|quadrature|steady)");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed";
        case Method::quadrature: return "quadrature";
        case Method::steady_state: return "steady";
    }
    throw invalid_input("bad method enum");
}

namespace {

constexpr double pi = std::numbers::pi;

void fill_closed(const AtomicSystem& sys, const FieldConfig& field,
                 std::vector<cd>& out) {
    const auto p = kernels::ChiParams::from(sys, field);
    const std::size_t n = field.probe_grid.size();
    std::vector<double> re(n), im(n);

    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunk = std::max<std::size_t>(256, (n + workers - 1) / workers);
    std::vector<std::future<void>> tasks;
    for (std::size_t start = 0; start < n; start += chunk) {
        const std::size_t len = std::min(chunk, n - start);
        tasks.push_back(std::async(std::launch::async, [&, start, len] {
            kernels::chi_grid(p,
                              std::span<const double>(field.probe_grid).subspan(start, len),
                              std::span<double>(re).subspan(start, len),
                              std::span<double>(im).subspan(start, len));
        }));
    }
    for (auto& t : tasks) t.get();
    for (std::size_t k = 0; k < n; ++k) out[k] = cd(re[k], im[k]);
}

// chi with R_bb from the numerical principal value; the other R_ij follow by
// the constant-ratio property of the separable profile.
void fill_quadrature(const AtomicSystem& sys, const FieldConfig& field,
                     std::vector<cd>& out) {
    const QuadratureSettings settings;  // symmetric-limit evaluation
    const std::size_t n = field.probe_grid.size();
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunk = std::max<std::size_t>(8, (n + workers - 1) / workers);
    std::vector<std::future<void>> tasks;
    for (std::size_t start = 0; start < n; start += chunk) {
        const std::size_t len = std::min(chunk, n - start);
        tasks.push_back(std::async(std::launch::async, [&, start, len] {
            for (std::size_t k = start; k < start + len; ++k) {
                const double w = field.probe_grid[k];
                const cd r_bb = r_quadrature(w, sys, Which::b, Which::b, settings);
                if (field.eps2 == 0.0) {
                    out[k] = -2.0 * pi * sys.density_n * r_bb;
                    continue;
                }
                const double ratio = (sys.b_c * sys.b_c) / (sys.b_b * sys.b_b);
                const cd r_cc = ratio * r_bb;
                const cd r_bc_cb = r_bb * r_cc;
                const double delta = w - two_photon_resonance(sys, field);
                const double quarter = 0.25 * field.eps2 * field.eps2;
                const cd d = cd(delta, sys.gamma_cb) - quarter * r_cc;
                out[k] = -2.0 * pi * sys.density_n * (r_bb + quarter * r_bc_cb / d);
            }
        }));
    }
    for (auto& t : tasks) t.get();
}

}  // namespace

SusceptibilitySpectrum compute_spectrum(const AtomicSystem& sys,
                                        const FieldConfig& field, Method method) {
    sys.validate();
    field.validate();

    SusceptibilitySpectrum spec;
    spec.grid = field.probe_grid;
    spec.method = method;
    spec.params_fingerprint = params_fingerprint(sys, field);
    spec.chi.resize(spec.grid.size());

    switch (method) {
        case Method::closed_form:
            fill_closed(sys, field, spec.chi);
            break;
        case Method::quadrature:
            fill_quadrature(sys, field, spec.chi);
            break;
        case Method::steady_state:
            spec.chi = chi_steady_grid(sys, field, field.probe_grid);
            break;
    }

    // Non-finite samples are errors, not data. A passive medium must not
    // amplify: the analytic routes guarantee Im chi >= 0 up to rounding; the
    // eta-extrapolated route carries its own (larger) discretization error
    // and is excluded from the strict bound.
    for (std::size_t k = 0; k < spec.chi.size(); ++k) {
        if (!std::isfinite(spec.chi[k].real()) || !std::isfinite(spec.chi[k].imag()))
            throw numerical_error("compute_spectrum: non-finite chi at omega1 = " +
                                  std::to_string(spec.grid[k]));
        if (sys.gamma_cb == 0.0 && method != Method::steady_state &&
            spec.chi[k].imag() < -1e-18)
            throw numerical_error("compute_spectrum: negative absorption at omega1 = " +
                                  std::to_string(spec.grid[k]));
    }
    return spec;
}

}  // namespace fanoeit
