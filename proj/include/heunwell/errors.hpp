#pragma once

#include <stdexcept>
#include <string>

namespace heunwell {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain, or an invalid configuration.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Something went wrong numerically (non-convergence, inconsistency, overflow).
class NumericalError : public Error {
public:
    using Error::Error;
};

class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A_n = 0 in the three-term recurrence.
class DegeneratePivotError : public NumericalError {
public:
    DegeneratePivotError(const std::string& what, int index)
        : NumericalError(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

/// Secant refinement of a quantisation root did not converge.
class RefinementError : public NumericalError {
public:
    RefinementError(const std::string& what, long double best_estimate)
        : NumericalError(what), best_(best_estimate) {}
    long double best_estimate() const noexcept { return best_; }

private:
    long double best_;
};

class SpectrumInconsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NormalisationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NumericalInconsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ResolutionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class WindowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StabilityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace heunwell
