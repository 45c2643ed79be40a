#pragma once

#include <stdexcept>
#include <string>

namespace semirel {

/// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// NaN/Inf or a failed numerical procedure.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed-point iteration of the implicit step did not converge.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, int iterations, double last_update)
        : NumericalError(what), iterations_(iterations), last_update_(last_update) {}

    int iterations() const noexcept { return iterations_; }
    double last_update() const noexcept { return last_update_; }

private:
    int iterations_;
    double last_update_;
};

/// Malformed configuration or command line.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace semirel
