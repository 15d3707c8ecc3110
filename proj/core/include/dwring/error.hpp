#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dwring {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested S_z sector does not exist (parity mismatch, |S_z| too large, empty target).
class InvalidSectorError : public Error {
public:
    using Error::Error;
};

/// A generated or supplied exchange coupling is not strictly positive.
class AfmViolationError : public Error {
public:
    using Error::Error;
};

/// Caller broke a documented precondition (unnormalized state, non-Hermitian input, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Parameter outside the range the model is defined for.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Configuration the operation does not support (e.g. several bonds for a per-bond law).
class UnsupportedConfigurationError : public Error {
public:
    using Error::Error;
};

/// Lowest eigenvalue of a sector is degenerate, so no unique ground doublet exists.
class DegenerateGroundError : public Error {
public:
    using Error::Error;
};

/// Sector too large for the dense eigensolver.
class UseLanczosError : public Error {
public:
    using Error::Error;
};

/// Lanczos did not converge. Carries the best Ritz values and their residual norms.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> estimates,
                     std::vector<double> residuals)
        : Error(what), estimates_(std::move(estimates)), residuals_(std::move(residuals)) {}

    const std::vector<double>& estimates() const noexcept { return estimates_; }
    const std::vector<double>& residuals() const noexcept { return residuals_; }

private:
    std::vector<double> estimates_;
    std::vector<double> residuals_;
};

}  // namespace dwring
