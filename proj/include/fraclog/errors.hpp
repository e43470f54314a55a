#pragma once

#include <stdexcept>
#include <string>

namespace fraclog {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (s outside (0,1), non-positive Gamma argument, r outside (0,1), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A discretization or configuration does not meet a resolution, padding or
/// layout requirement.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The requested test-function family does not support the operation.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A hypothesis required by a check is not satisfied.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed to reach its target accuracy.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double achieved_estimate)
        : Error(what), achieved_estimate_(achieved_estimate) {}

    double achieved_estimate() const noexcept { return achieved_estimate_; }

private:
    double achieved_estimate_;
};

/// An enumeration exceeded its node budget.
class BudgetError : public Error {
public:
    BudgetError(const std::string& what, long long partial_count)
        : Error(what), partial_count_(partial_count) {}

    long long partial_count() const noexcept { return partial_count_; }

private:
    long long partial_count_;
};

}  // namespace fraclog
