#pragma once

#include <stdexcept>
#include <string>

namespace qub {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid request: bad configuration, unsupported family/N combination,
/// malformed input document.
class UsageError : public Error {
public:
    using Error::Error;
};

/// The input is mathematically degenerate: a zero denominator, a pole,
/// a presentation that kills a generator, a non-invertible pivot.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Rewriting did not reach a fixed point within the step budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A construction-time self-check failed (convention mismatch, non-confluent
/// presentation, inconsistent extension).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace qub
