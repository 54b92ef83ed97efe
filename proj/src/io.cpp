#include "fanoeit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fanoeit/errors.hpp"
#include "fanoeit/units.hpp"

namespace fanoeit::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_spectrum_csv(const std::string& path, const SusceptibilitySpectrum& spec,
                        const AtomicSystem& sys) {
    if (spec.grid.size() != spec.chi.size())
        throw invalid_input("write_spectrum_csv: malformed spectrum");
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << "detuning_au,omega1_au,re_chi,im_chi\n";
    const double resonance = autoionizing_resonance(sys);
    for (std::size_t k = 0; k < spec.grid.size(); ++k) {
        const double re = spec.chi[k].real();
        const double im = spec.chi[k].imag();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw numerical_error("write_spectrum_csv: non-finite row at omega1 = " +
                                  format_double(spec.grid[k]));
        out << format_double(spec.grid[k] - resonance) << ','
            << format_double(spec.grid[k]) << ',' << format_double(re) << ','
            << format_double(im) << '\n';
    }
}

namespace {

std::vector<double> parse_row(const std::string& line, std::size_t expected,
                              const std::string& path) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        row.push_back(v);
    }
    if (row.size() != expected)
        throw invalid_input(path + ": expected " + std::to_string(expected) +
                            " columns, got " + std::to_string(row.size()));
    return row;
}

}  // namespace

SpectrumCsv read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "detuning_au,omega1_au,re_chi,im_chi")
        throw invalid_input(path + ": bad spectrum CSV header");
    SpectrumCsv csv;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto row = parse_row(line, 4, path);
        for (double v : row)
            if (!std::isfinite(v))
                throw invalid_input(path + ": non-finite value in spectrum CSV");
        csv.detuning.push_back(row[0]);
        csv.omega1.push_back(row[1]);
        csv.re_chi.push_back(row[2]);
        csv.im_chi.push_back(row[3]);
        if (csv.omega1.size() > 1 && !(csv.omega1.back() > csv.omega1[csv.omega1.size() - 2]))
            throw invalid_input(path + ": omega1_au not strictly increasing");
    }
    return csv;
}

void write_pulse_csv(const std::string& path, const ProbePulse& pulse,
                     const std::vector<cd>& samples) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << "t_au,re_amp,im_amp,intensity\n";
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double t = static_cast<double>(k) * pulse.grid_dt;
        out << format_double(t) << ',' << format_double(samples[k].real()) << ','
            << format_double(samples[k].imag()) << ','
            << format_double(std::norm(samples[k])) << '\n';
    }
}

void write_convergence_csv(const std::string& path,
                           const std::vector<EtaConvergenceRow>& rows) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << "eta,n_bins,re_chi,im_chi,deviation\n";
    for (const auto& r : rows) {
        out << format_double(r.eta) << ',' << r.n_bins << ','
            << format_double(r.re_chi) << ',' << format_double(r.im_chi) << ','
            << format_double(r.deviation) << '\n';
    }
}

Table read_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    Table table;
    std::string line;
    if (!std::getline(in, line)) throw invalid_input(path + ": empty CSV");
    std::stringstream header(line);
    std::string col;
    while (std::getline(header, col, ',')) table.columns.push_back(col);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        table.rows.push_back(parse_row(line, table.columns.size(), path));
    }
    return table;
}

nlohmann::ordered_json window_to_json(const WindowReport& report) {
    nlohmann::ordered_json j;
    j["center_au"] = report.center;
    j["width_au"] = report.width;
    j["width_over_gamma"] = report.width_over_gamma;
    j["n_g_center"] = report.n_g_center;
    j["threshold_used"] = report.threshold_used;
    if (report.fano_zero)
        j["fano_zero_au"] = *report.fano_zero;
    else
        j["fano_zero_au"] = nullptr;
    j["dispersion_slope_au"] = report.dispersion_slope;
    return j;
}

nlohmann::ordered_json fit_to_json(const ScalingFit& fit) {
    nlohmann::ordered_json j;
    j["exponent"] = fit.exponent;
    j["prefactor"] = fit.prefactor;
    j["r_squared"] = fit.r_squared;
    j["swept_variable"] = sweep_variable_name(fit.swept_variable);
    return j;
}

nlohmann::ordered_json params_to_json(const AtomicSystem& sys, const FieldConfig& field) {
    nlohmann::ordered_json j;
    j["e_b_au"] = sys.e_b;
    j["e_c_au"] = sys.e_c;
    j["e_a_au"] = sys.e_a;
    j["gamma_au"] = sys.gamma;
    j["q"] = sys.q;
    j["b_b_au"] = sys.b_b;
    j["b_c_au"] = sys.b_c;
    j["gamma_cb_au"] = sys.gamma_cb;
    j["density_au"] = sys.density_n;
    j["density_cm3"] = units::density_to_cm3(sys.density_n);
    j["flat_continuum"] = sys.flat_continuum;
    j["eps2_au"] = field.eps2;
    j["omega2_au"] = field.omega2;
    j["grid_points"] = field.probe_grid.size();
    j["grid_min_au"] = field.probe_grid.front();
    j["grid_max_au"] = field.probe_grid.back();
    j["params_fingerprint"] = params_fingerprint(sys, field);
    return j;
}

}  // namespace fanoeit::io
