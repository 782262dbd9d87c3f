#pragma once

#include <stdexcept>
#include <string>

namespace loclab {

/// Base of every error the library raises. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Index outside the represented range of a profile or path.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (log of a level <= 1, t <= e, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A profile or quantity that makes the requested statistic meaningless (all-zero variance, s_k = 0).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Invalid generator specification.
class SpecError : public Error {
public:
    using Error::Error;
};

/// Invalid experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A variance level or time beyond what the data represents.
class HorizonError : public Error {
public:
    HorizonError(const std::string& what, double largest_level)
        : Error(what), largest_level_(largest_level) {}

    /// Largest level the data can resolve.
    double largest_level() const noexcept { return largest_level_; }

private:
    double largest_level_;
};

/// Requested sieve horizon exceeds the configured memory bound.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// No schedule start exists within the horizon.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed; always a bug.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace loclab
