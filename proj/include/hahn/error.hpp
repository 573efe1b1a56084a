#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hahn {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition or API misuse: mixed group kinds, non-monomial truncation
/// base, out-of-range arguments, and similar caller mistakes.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Text could not be parsed. Carries a 0-based offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// An evaluation bound is too small for the requested operation, or a
/// requested enumeration is infeasible at the given bound.
class BoundError : public Error {
public:
    using Error::Error;
};

/// The LFP evaluation strategy was requested on a formula outside the
/// guarded Horn fragment it supports.
class StrategyError : public Error {
public:
    using Error::Error;
};

/// A tower construction tripped the configured magnitude guard.
class GuardError : public Error {
public:
    using Error::Error;
};

}  // namespace hahn
