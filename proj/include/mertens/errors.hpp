#pragma once

#include <stdexcept>
#include <string>

namespace mertens {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A table or segment would exceed the configured memory budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// An argument violates an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Exact evaluation was requested for an exponent other than 0 or 1.
class UnsupportedExactExponent : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Exact rational evaluation was requested beyond the configured bound.
class RationalBoundExceeded : public Error {
public:
    using Error::Error;
};

/// A value outside the range covered by a precomputed table was requested.
class OutOfRange : public Error {
public:
    using Error::Error;
};

} // namespace mertens
