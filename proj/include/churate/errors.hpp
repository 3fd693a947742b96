#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace churate {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (f <= 0, alpha <= 2, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Inconsistent or incomplete configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Output file or directory could not be written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature did not reach its tolerance; carries the best estimate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
        : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

/// Root bracket whose end points do not straddle a sign change.
class BracketError : public Error {
public:
    using Error::Error;
};

class IterationLimitError : public Error {
public:
    using Error::Error;
};

/// Quantity that must be non-negative by construction came out negative.
class NumericalConsistencyError : public Error {
public:
    using Error::Error;
};

/// The matching problem has no solution for the requested size; `trace` holds the
/// (abscissa, residual) pairs visited while scanning for a bracket.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, std::vector<std::pair<double, double>> trace)
        : Error(what), trace_(std::move(trace)) {}

    const std::vector<std::pair<double, double>>& trace() const noexcept { return trace_; }

private:
    std::vector<std::pair<double, double>> trace_;
};

}  // namespace churate
