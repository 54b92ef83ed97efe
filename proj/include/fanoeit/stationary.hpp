#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "fanoeit/params.hpp"
#include "fanoeit/susceptibility.hpp"

namespace fanoeit {

/// Discretized continuum for the density-matrix steady state: bin energies,
/// positive quadrature weights and the smoothing offset eta that stands in
/// for the i eta prescription of the continuum limit.
struct BinSet {
    std::vector<double> energies;
    std::vector<double> weights;
    double eta = 0.0;

    /// Checks strict ordering, positive weights, positive eta and the
    /// resolution condition (spacing < eta/5 near every pole in range and
    /// near the resonance).
    void validate(const AtomicSystem& sys,
                  std::pair<double, double> omega1_range) const;
};

/// Builds a binset dense (spacing eta/10) within +-50 gamma of the resonance
/// and +-50 eta of every pole position for omega1 in `omega1_range`, with
/// geometrically coarsening wings out to [E_a - 1e4 gamma, E_a + 1e4 gamma]
/// and beyond all poles. n_bins is the budget; an infeasible request throws.
BinSet build_binset(const AtomicSystem& sys,
                    std::pair<double, double> omega1_range, std::size_t n_bins,
                    double eta);

/// First-order-in-probe steady state of the discretized system.
struct StationaryState {
    std::vector<cd> sigma_eb;  // one coherence per bin
    cd sigma_cb;
    double probe_amplitude = 0.0;  // the eps1 used to drive the solve
};

/// Solves the stationary coupled equations
///   (E_k - E_b - omega1 - i eta) sigma_k = (1/2)(d_kb eps1 + d_kc eps2 sigma_cb)
///   (E_c + omega2 - E_b - omega1 - i gamma_cb) sigma_cb
///       = (1/2) eps2 sum_k w_k d_ck sigma_k
/// by eliminating sigma_cb (the bins couple only through it) and
/// back-substituting. eps1 is an arbitrary small linear-response reference.
StationaryState stationary_solve(const AtomicSystem& sys, const FieldConfig& field,
                                 double omega1, const BinSet& bins,
                                 double eps1 = 1e-12);

/// Same system solved densely with pivoted Gaussian elimination; cross-check
/// for the arrow-structured solve. Cost grows cubically, keep bins small.
StationaryState stationary_solve_dense(const AtomicSystem& sys,
                                       const FieldConfig& field, double omega1,
                                       const BinSet& bins, double eps1 = 1e-12);

/// Largest relative residual of the defining linear system at `state`.
double stationary_residual(const AtomicSystem& sys, const FieldConfig& field,
                           double omega1, const BinSet& bins,
                           const StationaryState& state);

/// chi = (N/eps0) * sum_k w_k d_bk sigma_k / eps1 (a.u.: N/eps0 = 4 pi N).
cd chi_from_state(const StationaryState& state, const AtomicSystem& sys,
                  const BinSet& bins);

/// Steady-state chi extrapolated to eta -> 0: evaluated at eta and eta/2
/// with spacing/eta fixed, then Richardson-combined (the eta-dependence is
/// analytic, so the leading error is linear).
cd chi_steady(const AtomicSystem& sys, const FieldConfig& field, double omega1,
              double eta = 0.0 /* 0 = gamma/8 */, std::size_t n_bins_budget = 60000);

/// chi_steady over a whole grid, sharing one binset pair across all points.
std::vector<cd> chi_steady_grid(const AtomicSystem& sys, const FieldConfig& field,
                                const std::vector<double>& omega1_grid,
                                double eta = 0.0,
                                std::size_t n_bins_budget = 60000);

struct EtaConvergenceRow {
    double eta;
    std::size_t n_bins;
    double re_chi;
    double im_chi;
    double deviation;  // |chi_disc - chi_closed| at this eta
};

/// Convergence table of the un-extrapolated discretized chi against the
/// closed form for a decreasing eta sequence.
std::vector<EtaConvergenceRow> eta_convergence_table(
    const AtomicSystem& sys, const FieldConfig& field, double omega1,
    const std::vector<double>& etas, std::size_t n_bins_budget = 60000);

}  // namespace fanoeit
