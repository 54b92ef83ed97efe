#include "fanoeit/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fanoeit/errors.hpp"

namespace fanoeit {

namespace {

constexpr double pi = std::numbers::pi;

// Signed dipole shape phi(E) with d_iE = B_i * phi(E); the sign carries the
// Fano zero crossing, which matters for the cross sums.
double dipole_shape(double e, const AtomicSystem& sys) {
    if (sys.flat_continuum) return 1.0;
    const double v = e - sys.e_a;
    return (v + sys.q * sys.gamma) / std::hypot(v, sys.gamma);
}

// Compensated complex accumulator; the bin sums run over ~1e4 terms and the
// residual invariant is tighter than plain summation drift.
struct KahanSum {
    cd sum{0.0, 0.0};
    cd carry{0.0, 0.0};
    void add(cd value) {
        const cd y = value - carry;
        const cd t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct DenseRegion {
    double lo, hi, spacing;
};

}  // namespace

void BinSet::validate(const AtomicSystem& sys,
                      std::pair<double, double> omega1_range) const {
    if (energies.size() != weights.size() || energies.empty())
        throw invalid_input("BinSet: energies/weights size mismatch");
    if (!(eta > 0.0)) throw invalid_input("BinSet: eta must be > 0");
    for (std::size_t k = 0; k < energies.size(); ++k) {
        if (k > 0 && !(energies[k] > energies[k - 1]))
            throw invalid_input("BinSet: energies must be strictly increasing");
        if (!(weights[k] > 0.0))
            throw invalid_input("BinSet: weights must be positive");
    }
    auto spacing_near = [&](double e) {
        const auto it = std::lower_bound(energies.begin(), energies.end(), e);
        if (it == energies.begin() || it == energies.end())
            throw invalid_input("BinSet: required energy outside binned span");
        return *it - *(it - 1);
    };
    const double pole_lo = sys.e_b + omega1_range.first;
    const double pole_hi = sys.e_b + omega1_range.second;
    for (double e : {pole_lo, pole_hi, 0.5 * (pole_lo + pole_hi), sys.e_a}) {
        if (!(spacing_near(e) < eta / 5.0))
            throw invalid_input("BinSet: spacing near a pole violates the "
                                "resolution condition (< eta/5)");
    }
}

BinSet build_binset(const AtomicSystem& sys,
                    std::pair<double, double> omega1_range, std::size_t n_bins,
                    double eta) {
    sys.validate();
    if (n_bins < 100) throw invalid_input("build_binset: n_bins must be >= 100");
    if (!(eta > 0.0)) throw invalid_input("build_binset: eta must be > 0");
    if (!(omega1_range.second >= omega1_range.first))
        throw invalid_input("build_binset: bad omega1 range");

    const double g = sys.gamma;
    const double pole_lo = sys.e_b + omega1_range.first;
    const double pole_hi = sys.e_b + omega1_range.second;
    const double fine = eta / 10.0;

    // Dense patches around the resonance and around every pole in range,
    // merged when they overlap.
    std::vector<DenseRegion> dense = {
        {sys.e_a - 50.0 * g, sys.e_a + 50.0 * g, fine},
        {pole_lo - 50.0 * eta, pole_hi + 50.0 * eta, fine},
    };
    std::sort(dense.begin(), dense.end(),
              [](const DenseRegion& a, const DenseRegion& b) { return a.lo < b.lo; });
    std::vector<DenseRegion> merged;
    for (const auto& r : dense) {
        if (!merged.empty() && r.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, r.hi);
        else
            merged.push_back(r);
    }

    const double span_lo = std::min(sys.e_a - 1e4 * g, pole_lo - 1e3 * eta);
    const double span_hi = std::max(sys.e_a + 1e4 * g, pole_hi + 1e3 * eta);

    std::vector<double> energies;
    auto fill_uniform = [&](double lo, double hi, double h) {
        const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h));
        for (std::size_t k = 0; k <= n; ++k)
            energies.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n));
    };
    auto fill_geometric = [&](double from, double to, double h0) {
        // step grows by 5% per bin away from the dense edge
        double e = from, h = h0;
        const double dir = to > from ? 1.0 : -1.0;
        while ((to - e) * dir > 0.0) {
            e += dir * h;
            h *= 1.05;
            if ((to - e) * dir <= 0.0) break;
            energies.push_back(e);
        }
        energies.push_back(to);
    };

    fill_geometric(merged.front().lo, span_lo, fine);
    for (std::size_t r = 0; r < merged.size(); ++r) {
        fill_uniform(merged[r].lo, merged[r].hi, merged[r].spacing);
        if (r + 1 < merged.size()) {
            // bridge between dense patches
            const double gap_lo = merged[r].hi;
            const double gap_hi = merged[r + 1].lo;
            fill_geometric(gap_lo, 0.5 * (gap_lo + gap_hi), fine);
            fill_geometric(gap_hi, 0.5 * (gap_lo + gap_hi), fine);
        }
    }
    fill_geometric(merged.back().hi, span_hi, fine);

    std::sort(energies.begin(), energies.end());
    energies.erase(std::unique(energies.begin(), energies.end()), energies.end());

    if (energies.size() > n_bins)
        throw invalid_input("build_binset: infeasible resolution request, needs " +
                            std::to_string(energies.size()) + " bins but budget is " +
                            std::to_string(n_bins));

    BinSet bins;
    bins.eta = eta;
    bins.energies = std::move(energies);
    bins.weights.resize(bins.energies.size());
    const std::size_t n = bins.energies.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double lo = k == 0 ? bins.energies[0] : bins.energies[k - 1];
        const double hi = k + 1 == n ? bins.energies[n - 1] : bins.energies[k + 1];
        bins.weights[k] = 0.5 * (hi - lo);
    }
    bins.validate(sys, omega1_range);
    return bins;
}

StationaryState stationary_solve(const AtomicSystem& sys, const FieldConfig& field,
                                 double omega1, const BinSet& bins, double eps1) {
    if (!(eps1 >= 0.0)) throw invalid_input("stationary_solve: eps1 must be >= 0");
    const std::size_t n = bins.energies.size();
    StationaryState st;
    st.probe_amplitude = eps1;
    st.sigma_eb.assign(n, cd(0.0, 0.0));
    st.sigma_cb = 0.0;
    if (eps1 == 0.0) return st;  // homogeneous system

    const double pole = sys.e_b + omega1;
    const double delta = omega1 - two_photon_resonance(sys, field);

    // G = sum_k w_k phi_k^2 / (E_k - pole - i eta)
    KahanSum big_g_acc;
    std::vector<double> phi(n);
    for (std::size_t k = 0; k < n; ++k) {
        phi[k] = dipole_shape(bins.energies[k], sys);
        const cd denom(bins.energies[k] - pole, -bins.eta);
        big_g_acc.add(bins.weights[k] * phi[k] * phi[k] / denom);
    }
    const cd big_g = big_g_acc.sum;

    // sigma_cb from the eliminated scalar equation.
    if (field.eps2 > 0.0) {
        const cd denom = cd(delta, sys.gamma_cb) +
                         0.25 * field.eps2 * field.eps2 * sys.b_c * sys.b_c * big_g;
        if (std::abs(denom) == 0.0)
            throw numerical_error(
                "stationary_solve: singular system at two-photon detuning " +
                std::to_string(delta));
        st.sigma_cb = -0.25 * field.eps2 * eps1 * sys.b_b * sys.b_c * big_g / denom;
    }

    for (std::size_t k = 0; k < n; ++k) {
        const cd denom(bins.energies[k] - pole, -bins.eta);
        const cd drive = 0.5 * (sys.b_b * phi[k] * eps1 +
                                sys.b_c * phi[k] * field.eps2 * st.sigma_cb);
        st.sigma_eb[k] = drive / denom;
    }
    return st;
}

StationaryState stationary_solve_dense(const AtomicSystem& sys,
                                       const FieldConfig& field, double omega1,
                                       const BinSet& bins, double eps1) {
    const std::size_t n = bins.energies.size();
    if (n > 4000)
        throw invalid_input("stationary_solve_dense: binset too large for a dense solve");
    const double pole = sys.e_b + omega1;
    const double delta = omega1 - two_photon_resonance(sys, field);

    const std::size_t dim = n + 1;
    std::vector<cd> m(dim * dim, cd(0.0, 0.0));
    std::vector<cd> rhs(dim, cd(0.0, 0.0));
    auto at = [&](std::size_t r, std::size_t c) -> cd& { return m[r * dim + c]; };

    for (std::size_t k = 0; k < n; ++k) {
        const double phi = dipole_shape(bins.energies[k], sys);
        at(k, k) = cd(bins.energies[k] - pole, -bins.eta);
        at(k, n) = -0.5 * sys.b_c * phi * field.eps2;
        rhs[k] = 0.5 * sys.b_b * phi * eps1;
        at(n, k) = -0.5 * field.eps2 * bins.weights[k] * sys.b_c * phi;
    }
    at(n, n) = cd(-delta, -sys.gamma_cb);

    // Gaussian elimination with partial pivoting.
    std::vector<std::size_t> perm(dim);
    for (std::size_t k = 0; k < dim; ++k) perm[k] = k;
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        double best = std::abs(at(col, col));
        for (std::size_t r = col + 1; r < dim; ++r) {
            if (std::abs(at(r, col)) > best) {
                best = std::abs(at(r, col));
                piv = r;
            }
        }
        if (best == 0.0)
            throw numerical_error("stationary_solve_dense: singular system at "
                                  "two-photon detuning " + std::to_string(delta));
        if (piv != col) {
            for (std::size_t c = 0; c < dim; ++c) std::swap(at(piv, c), at(col, c));
            std::swap(rhs[piv], rhs[col]);
        }
        for (std::size_t r = col + 1; r < dim; ++r) {
            const cd factor = at(r, col) / at(col, col);
            if (factor == cd(0.0, 0.0)) continue;
            for (std::size_t c = col; c < dim; ++c) at(r, c) -= factor * at(col, c);
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<cd> x(dim);
    for (std::size_t r = dim; r-- > 0;) {
        cd acc = rhs[r];
        for (std::size_t c = r + 1; c < dim; ++c) acc -= at(r, c) * x[c];
        x[r] = acc / at(r, r);
    }

    StationaryState st;
    st.probe_amplitude = eps1;
    st.sigma_eb.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    st.sigma_cb = x[n];
    return st;
}

double stationary_residual(const AtomicSystem& sys, const FieldConfig& field,
                           double omega1, const BinSet& bins,
                           const StationaryState& state) {
    const std::size_t n = bins.energies.size();
    if (state.sigma_eb.size() != n)
        throw invalid_input("stationary_residual: state/bin size mismatch");
    const double pole = sys.e_b + omega1;
    const double delta = omega1 - two_photon_resonance(sys, field);
    const double eps1 = state.probe_amplitude;

    // Mixed backward error: each row residual is normalized by the row's
    // coefficient magnitude times the solution norm plus the driving term,
    // which stays meaningful at the dark point where the exact solution is
    // identically zero and the computed one is roundoff.
    double x_norm = std::abs(state.sigma_cb);
    for (const cd& s : state.sigma_eb) x_norm = std::max(x_norm, std::abs(s));

    double worst = 0.0;
    KahanSum cross;
    double row_coeff_sum = std::abs(cd(-delta, -sys.gamma_cb));
    for (std::size_t k = 0; k < n; ++k) {
        const double phi = dipole_shape(bins.energies[k], sys);
        const cd denom(bins.energies[k] - pole, -bins.eta);
        const cd residual = denom * state.sigma_eb[k] -
                            0.5 * sys.b_b * phi * eps1 -
                            0.5 * sys.b_c * phi * field.eps2 * state.sigma_cb;
        const double scale = (std::abs(denom) + 0.5 * field.eps2 * sys.b_c *
                                                    std::abs(phi)) * x_norm +
                             0.5 * sys.b_b * std::abs(phi) * eps1 + 1e-300;
        worst = std::max(worst, std::abs(residual) / scale);
        cross.add(bins.weights[k] * sys.b_c * phi * state.sigma_eb[k]);
        row_coeff_sum += 0.5 * field.eps2 * bins.weights[k] * sys.b_c * std::abs(phi);
    }
    const cd residual =
        cd(-delta, -sys.gamma_cb) * state.sigma_cb - 0.5 * field.eps2 * cross.sum;
    worst = std::max(worst, std::abs(residual) / (row_coeff_sum * x_norm + 1e-300));
    return worst;
}

cd chi_from_state(const StationaryState& state, const AtomicSystem& sys,
                  const BinSet& bins) {
    if (state.sigma_eb.size() != bins.energies.size())
        throw invalid_input("chi_from_state: state/bin size mismatch");
    if (!(state.probe_amplitude > 0.0))
        throw invalid_input("chi_from_state: state has zero probe amplitude");
    KahanSum pol;
    for (std::size_t k = 0; k < bins.energies.size(); ++k)
        pol.add(bins.weights[k] * sys.b_b * dipole_shape(bins.energies[k], sys) *
                state.sigma_eb[k]);
    return 4.0 * pi * sys.density_n * pol.sum / state.probe_amplitude;
}

namespace {

// chi of the discretized system straight from the eliminated algebra:
//   G = sum_k w_k phi_k^2 / (E_k - pole - i eta)
//   chi = 2 pi N B_b^2 G (Delta + i gamma_cb)
//         / (Delta + i gamma_cb + (eps2^2/4) B_c^2 G)
// Identical to solving and folding the state back through Eq.-style
// polarization; the dark state at Delta = 0 is exact either way.
cd chi_disc_at(const AtomicSystem& sys, const FieldConfig& field, double omega1,
               const BinSet& bins, const std::vector<double>& wphi2) {
    const double pole = sys.e_b + omega1;
    KahanSum big_g_acc;
    for (std::size_t k = 0; k < bins.energies.size(); ++k)
        big_g_acc.add(wphi2[k] / cd(bins.energies[k] - pole, -bins.eta));
    const cd big_g = big_g_acc.sum;
    const cd base = 2.0 * pi * sys.density_n * sys.b_b * sys.b_b * big_g;
    if (field.eps2 == 0.0) return base;
    const cd g(omega1 - two_photon_resonance(sys, field), sys.gamma_cb);
    const cd denom = g + 0.25 * field.eps2 * field.eps2 * sys.b_c * sys.b_c * big_g;
    if (std::abs(denom) == 0.0)
        throw numerical_error("chi_steady: singular dressed denominator");
    return base * g / denom;
}

std::vector<double> weighted_shape_sq(const AtomicSystem& sys, const BinSet& bins) {
    std::vector<double> wphi2(bins.energies.size());
    for (std::size_t k = 0; k < bins.energies.size(); ++k) {
        const double phi = dipole_shape(bins.energies[k], sys);
        wphi2[k] = bins.weights[k] * phi * phi;
    }
    return wphi2;
}

}  // namespace

cd chi_steady(const AtomicSystem& sys, const FieldConfig& field, double omega1,
              double eta, std::size_t n_bins_budget) {
    return chi_steady_grid(sys, field, {omega1}, eta, n_bins_budget)[0];
}

std::vector<cd> chi_steady_grid(const AtomicSystem& sys, const FieldConfig& field,
                                const std::vector<double>& omega1_grid,
                                double eta, std::size_t n_bins_budget) {
    if (omega1_grid.empty()) return {};
    if (eta == 0.0) eta = sys.gamma / 8.0;
    const std::pair<double, double> range{omega1_grid.front(), omega1_grid.back()};
    std::vector<cd> out(omega1_grid.size());
    const BinSet coarse = build_binset(sys, range, n_bins_budget, eta);
    const BinSet fine = build_binset(sys, range, n_bins_budget, 0.5 * eta);
    const std::vector<double> wphi2_coarse = weighted_shape_sq(sys, coarse);
    const std::vector<double> wphi2_fine = weighted_shape_sq(sys, fine);
    for (std::size_t i = 0; i < omega1_grid.size(); ++i) {
        const cd c1 = chi_disc_at(sys, field, omega1_grid[i], coarse, wphi2_coarse);
        const cd c2 = chi_disc_at(sys, field, omega1_grid[i], fine, wphi2_fine);
        out[i] = 2.0 * c2 - c1;
    }
    return out;
}

std::vector<EtaConvergenceRow> eta_convergence_table(
    const AtomicSystem& sys, const FieldConfig& field, double omega1,
    const std::vector<double>& etas, std::size_t n_bins_budget) {
    const cd reference = chi(omega1, sys, field);
    std::vector<EtaConvergenceRow> rows;
    rows.reserve(etas.size());
    for (double eta : etas) {
        const BinSet bins = build_binset(sys, {omega1, omega1}, n_bins_budget, eta);
        const StationaryState st = stationary_solve(sys, field, omega1, bins);
        const cd value = chi_from_state(st, sys, bins);
        rows.push_back({eta, bins.energies.size(), value.real(), value.imag(),
                        std::abs(value - reference)});
    }
    return rows;
}

}  // namespace fanoeit
