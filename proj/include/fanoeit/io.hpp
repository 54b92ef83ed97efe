#pragma once

#include <string>
#include <vector>

#include "fanoeit/analysis.hpp"
#include "fanoeit/params.hpp"
#include "fanoeit/propagation.hpp"
#include "fanoeit/spectrum.hpp"
#include "fanoeit/stationary.hpp"

#include <json.hpp>

namespace fanoeit::io {

/// Spectrum CSV with columns exactly:
/// detuning_au (hbar omega1 - (E_a - E_b)), omega1_au, re_chi, im_chi.
/// Rows ordered by omega1_au; non-finite samples are an error, not data.
void write_spectrum_csv(const std::string& path, const SusceptibilitySpectrum& spec,
                        const AtomicSystem& sys);

struct SpectrumCsv {
    std::vector<double> detuning;
    std::vector<double> omega1;
    std::vector<double> re_chi;
    std::vector<double> im_chi;
};

SpectrumCsv read_spectrum_csv(const std::string& path);

/// Time-series CSV (t_au, re_amp, im_amp, intensity).
void write_pulse_csv(const std::string& path, const ProbePulse& pulse,
                     const std::vector<cd>& samples);

/// eta-convergence table CSV (eta, n_bins, re_chi, im_chi, deviation).
void write_convergence_csv(const std::string& path,
                           const std::vector<EtaConvergenceRow>& rows);

/// Generic numeric CSV reader (header + uniform double columns); backs the
/// read-back checks for the table-shaped outputs.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
Table read_table_csv(const std::string& path);

nlohmann::ordered_json window_to_json(const WindowReport& report);
nlohmann::ordered_json fit_to_json(const ScalingFit& fit);
nlohmann::ordered_json params_to_json(const AtomicSystem& sys, const FieldConfig& field);

/// Shortest decimal form that round-trips a double exactly.
std::string format_double(double v);

}  // namespace fanoeit::io
