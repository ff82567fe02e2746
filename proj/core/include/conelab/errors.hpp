#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

/// Base class for all conelab errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A certified comparison could not be resolved within the precision cap.
struct PrecisionExhausted : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

/// Brute-force oracle invoked beyond its configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

/// No record survives the burn-in filter.
struct NoRecords : Error {
    using Error::Error;
};

/// Step search window empty within the size budget (construction).
struct SearchExhausted : Error {
    using Error::Error;
};

struct NoRootInWindow : Error {
    using Error::Error;
};

struct MultipleRootsUnresolved : Error {
    using Error::Error;
};

// The next two signal broken internal invariants, not bad inputs: a Mobius
// sum outside (6/pi^2, 1] or a failed Minkowski search is a bug by theorem.
struct CorridorViolation : Error {
    using Error::Error;
};

struct SearchBudgetExceeded : Error {
    using Error::Error;
};

struct InvariantViolation : Error {
    using Error::Error;
};

/// Bad user input (CLI exit code 2).
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace conelab
