#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fanoeit/params.hpp"
#include "fanoeit/susceptibility.hpp"

namespace fanoeit {

enum class Method { closed_form, quadrature, steady_state };

Method method_from_name(const std::string& name);
std::string method_name(Method m);

/// chi sampled over a probe grid, tagged with how it was computed and a
/// fingerprint of the inputs.
struct SusceptibilitySpectrum {
    std::vector<double> grid;
    std::vector<cd> chi;
    Method method = Method::closed_form;
    std::string params_fingerprint;

    ComplexResponse at(std::size_t k) const { return {chi.at(k), grid.at(k)}; }
    std::size_t size() const { return grid.size(); }
};

/// Evaluates chi over field.probe_grid with the selected method. Grid chunks
/// run concurrently; assembly order is fixed, so the result is deterministic.
/// Rejects NaN/Inf samples (those are errors, not data) and, for gamma_cb = 0,
/// enforces Im chi >= -1e-18 pointwise.
SusceptibilitySpectrum compute_spectrum(const AtomicSystem& sys,
                                        const FieldConfig& field,
                                        Method method = Method::closed_form);

}  // namespace fanoeit
