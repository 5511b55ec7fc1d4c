#pragma once

#include <stdexcept>
#include <string>

namespace dg {

/// Invalid argument or violated precondition.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A requested region is not contained in (or resolvable on) the field domain.
class GeometryError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// The nonlinear iteration exponent is <= 1, so the recurrence cannot contract.
class NonContractiveError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Inconsistent or unstable solver configuration (e.g. CFL violation).
class ConfigError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Non-finite values produced during time marching.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, long step)
        : std::runtime_error(what), step_(step) {}

    /// First marching step at which a non-finite value appeared.
    long step() const { return step_; }

private:
    long step_;
};

/// File parsing / serialization failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dg
