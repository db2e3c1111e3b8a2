#pragma once

#include <stdexcept>
#include <string>

namespace lchi {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A modulus (or prime power) exceeds the supported table range.
struct ModulusTooLargeError : Error {
    using Error::Error;
};

// Checked integer arithmetic would wrap around.
struct OverflowError : Error {
    using Error::Error;
};

// A stated precondition of an operation does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

// The analyticity/derivative-growth hypothesis of a bound is violated;
// the operation refuses to return a value that would not be a bound.
struct HypothesisError : Error {
    using Error::Error;
};

// An identity that is guaranteed to exist failed exhaustive verification.
// Signals an implementation bug, never expected input behavior.
struct VerificationError : Error {
    using Error::Error;
};

// The requested error radius cannot be certified.
struct PrecisionError : Error {
    using Error::Error;
};

// A summation range exceeds the runtime guard.
struct RangeError : Error {
    using Error::Error;
};

}  // namespace lchi
