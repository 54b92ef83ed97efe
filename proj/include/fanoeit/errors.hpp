#pragma once

#include <stdexcept>
#include <string>

namespace fanoeit {

/// Invalid parameters or preconditions. The CLI maps this to exit code 2.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure (non-convergence, unresolved feature, singular system).
/// The CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature gave up; carries the error estimate it reached.
struct quadrature_error : numerical_error {
    double achieved_error;
    quadrature_error(const std::string& msg, double achieved)
        : numerical_error(msg), achieved_error(achieved) {}
};

}  // namespace fanoeit
