#pragma once

#include <stdexcept>
#include <string>

namespace anderson {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid model, box or experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of an operation (e.g. a site not in the box).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operation called in a state that violates its preconditions.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Problem too large for the requested (dense) code path.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Factorization or iteration failed to produce a trustworthy answer.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Regression could not be carried out on the supplied data.
class FitError : public Error {
public:
    using Error::Error;
};

}  // namespace anderson
