#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration (bad family parameter, malformed config file, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// A point violates the domain of definition of an operation
/// (outside G1, on a branch cut, wrong Sigma label, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Node budget exhausted before the quadrature converged.
struct QuadratureError : Error {
    double worst_delta;
    QuadratureError(const std::string& msg, double delta)
        : Error(msg), worst_delta(delta) {}
};

/// Cholesky pivot lost too much significance (or went nonpositive).
struct IllConditionedError : Error {
    int pivot_index;
    IllConditionedError(const std::string& msg, int k)
        : Error(msg), pivot_index(k) {}
};

/// Two independent computation paths disagree beyond tolerance.
struct CrossCheckError : Error {
    using Error::Error;
};

/// Simultaneous root iteration failed to converge.
struct RootFindError : Error {
    double worst_residual;
    RootFindError(const std::string& msg, double resid)
        : Error(msg), worst_residual(resid) {}
};

}  // namespace bergman
