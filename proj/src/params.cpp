#include "fanoeit/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fanoeit/errors.hpp"
#include "fanoeit/units.hpp"

namespace fanoeit {

void AtomicSystem::validate() const {
    if (!(gamma > 0.0)) throw invalid_input("AtomicSystem: gamma must be > 0");
    if (!(b_b > 0.0)) throw invalid_input("AtomicSystem: b_b must be > 0");
    if (!(b_c > 0.0)) throw invalid_input("AtomicSystem: b_c must be > 0");
    if (!(gamma_cb >= 0.0)) throw invalid_input("AtomicSystem: gamma_cb must be >= 0");
    if (!(density_n > 0.0)) throw invalid_input("AtomicSystem: density_n must be > 0");
    if (!(e_b < 0.0)) throw invalid_input("AtomicSystem: e_b must be < 0 (bound state)");
    if (!(e_c < 0.0)) throw invalid_input("AtomicSystem: e_c must be < 0 (bound state)");
    if (!(e_a > 0.0)) throw invalid_input("AtomicSystem: e_a must be > 0 (inside continuum)");
    if (!std::isfinite(q)) throw invalid_input(
        "AtomicSystem: q must be finite; use flat_continuum for the structureless limit");
}

void FieldConfig::validate() const {
    if (!(eps2 >= 0.0)) throw invalid_input("FieldConfig: eps2 must be >= 0");
    if (!(omega2 > 0.0)) throw invalid_input("FieldConfig: omega2 must be > 0");
    if (probe_grid.empty()) throw invalid_input("FieldConfig: probe_grid is empty");
    for (std::size_t i = 0; i < probe_grid.size(); ++i) {
        if (!std::isfinite(probe_grid[i]))
            throw invalid_input("FieldConfig: probe_grid has a non-finite entry");
        if (i > 0 && !(probe_grid[i] > probe_grid[i - 1]))
            throw invalid_input("FieldConfig: probe_grid must be strictly increasing");
    }
}

Preset preset_from_name(const std::string& name) {
    if (name == "fig1") return Preset::fig1;
    if (name == "fig2") return Preset::fig2;
    if (name == "fig3") return Preset::fig3;
    if (name == "fig4") return Preset::fig4;
    if (name == "fig5") return Preset::fig5;
    throw invalid_input("unknown preset '" + name + "' (expected fig1..fig5)");
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::fig1: return "fig1";
        case Preset::fig2: return "fig2";
        case Preset::fig3: return "fig3";
        case Preset::fig4: return "fig4";
        case Preset::fig5: return "fig5";
    }
    throw invalid_input("bad preset enum");
}

std::pair<AtomicSystem, FieldConfig> paper_preset(Preset p) {
    AtomicSystem sys;
    sys.e_b = -0.2;
    sys.e_c = -0.1;
    sys.e_a = 0.1;
    sys.gamma = 1e-9;
    sys.b_b = 2.0;
    sys.b_c = 3.0;
    sys.gamma_cb = 0.0;
    sys.density_n = units::convert_density(0.67e12);

    double eps2 = 0.0;
    sys.q = 10.0;
    switch (p) {
        case Preset::fig1: eps2 = 0.0; break;
        case Preset::fig2: eps2 = 1e-6; break;
        case Preset::fig3: eps2 = 1e-7; break;
        case Preset::fig4: eps2 = 1e-8; break;
        case Preset::fig5: eps2 = 1e-9; sys.q = 100.0; break;
    }

    FieldConfig field;
    field.eps2 = eps2;
    field.omega2 = sys.e_a - sys.e_c;  // two-photon alignment rule
    field.probe_grid = make_nested_grid(autoionizing_resonance(sys), sys.gamma);

    sys.validate();
    field.validate();
    return {sys, field};
}

double two_photon_resonance(const AtomicSystem& sys, const FieldConfig& field) {
    return (sys.e_c + field.omega2) - sys.e_b;
}

double autoionizing_resonance(const AtomicSystem& sys) {
    return sys.e_a - sys.e_b;
}

namespace {

// Symmetric span about `center`. Odd n hits the center exactly (offset 0);
// even n uses half-integer offsets and skips it.
void append_span(std::vector<double>& out, double center, double halfwidth, int n) {
    if (n % 2 == 1) {
        const int m = (n - 1) / 2;
        const double step = halfwidth / m;
        for (int k = 0; k < n; ++k) out.push_back(center + (k - m) * step);
    } else {
        const double step = 2.0 * halfwidth / (n - 1);
        const double mid = 0.5 * (n - 1);
        for (int k = 0; k < n; ++k) out.push_back(center + (k - mid) * step);
    }
}

}  // namespace

std::vector<double> make_nested_grid(double center, double gamma) {
    std::vector<double> grid;
    grid.reserve(4001);
    append_span(grid, center, 50.0 * gamma, 1333);
    append_span(grid, center, gamma, 1334);
    append_span(grid, center, 1e-4 * gamma, 1334);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<double> make_uniform_grid(double center, double halfwidth, int n) {
    if (n < 2) throw invalid_input("make_uniform_grid: need at least 2 points");
    if (!(halfwidth > 0.0)) throw invalid_input("make_uniform_grid: halfwidth must be > 0");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n));
    append_span(grid, center, halfwidth, n);
    return grid;
}

std::pair<AtomicSystem, FieldConfig> load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open parameter file '" + path + "'");

    std::map<std::string, double> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::string key, eq;
        double value;
        std::istringstream ls(line);
        if (!(ls >> key)) continue;  // blank
        ls >> eq;
        if (eq == "=") {
            if (!(ls >> value))
                throw invalid_input(path + ":" + std::to_string(lineno) + ": missing value");
        } else {
            std::istringstream vs(eq);
            if (!(vs >> value))
                throw invalid_input(path + ":" + std::to_string(lineno) + ": bad value");
        }
        kv[key] = value;
    }

    auto require = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw invalid_input(path + ": missing key '" + key + "'");
        return it->second;
    };

    AtomicSystem sys;
    sys.e_b = require("e_b_au");
    sys.e_c = require("e_c_au");
    sys.e_a = require("e_a_au");
    sys.gamma = require("gamma_au");
    sys.q = require("q");
    sys.b_b = require("b_b_au");
    sys.b_c = require("b_c_au");
    sys.gamma_cb = require("gamma_cb_au");
    sys.density_n = units::convert_density(require("density_cm3"));
    if (auto it = kv.find("flat_continuum"); it != kv.end())
        sys.flat_continuum = it->second != 0.0;

    FieldConfig field;
    field.eps2 = require("eps2_au");
    field.omega2 = require("omega2_au");
    const double center = require("grid_center_au");
    const double halfwidth = require("grid_halfwidth_au");
    const double points = require("grid_points");
    if (points < 2 || points != std::floor(points))
        throw invalid_input(path + ": grid_points must be an integer >= 2");
    field.probe_grid = make_uniform_grid(center, halfwidth, static_cast<int>(points));

    sys.validate();
    field.validate();
    return {sys, field};
}

void save_params(const std::string& path, const AtomicSystem& sys,
                 const FieldConfig& field, double grid_center,
                 double grid_halfwidth, int grid_points) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write parameter file '" + path + "'");
    char buf[64];
    auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << key << " = " << buf << "\n";
    };
    put("e_b_au", sys.e_b);
    put("e_c_au", sys.e_c);
    put("e_a_au", sys.e_a);
    put("gamma_au", sys.gamma);
    put("q", sys.q);
    put("b_b_au", sys.b_b);
    put("b_c_au", sys.b_c);
    put("gamma_cb_au", sys.gamma_cb);
    put("density_cm3", units::density_to_cm3(sys.density_n));
    put("eps2_au", field.eps2);
    put("omega2_au", field.omega2);
    put("grid_center_au", grid_center);
    put("grid_halfwidth_au", grid_halfwidth);
    put("grid_points", grid_points);
    if (sys.flat_continuum) out << "flat_continuum = 1\n";
}

std::string params_fingerprint(const AtomicSystem& sys, const FieldConfig& field) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&h](const void* p, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
    };
    auto mixd = [&](double v) { mix(&v, sizeof v); };
    mixd(sys.e_b); mixd(sys.e_c); mixd(sys.e_a); mixd(sys.gamma); mixd(sys.q);
    mixd(sys.b_b); mixd(sys.b_c); mixd(sys.gamma_cb); mixd(sys.density_n);
    mixd(sys.flat_continuum ? 1.0 : 0.0);
    mixd(field.eps2); mixd(field.omega2);
    mixd(static_cast<double>(field.probe_grid.size()));
    if (!field.probe_grid.empty()) {
        mixd(field.probe_grid.front());
        mixd(field.probe_grid.back());
        mix(field.probe_grid.data(), field.probe_grid.size() * sizeof(double));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fanoeit
