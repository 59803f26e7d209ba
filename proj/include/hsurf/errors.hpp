#pragma once

#include <stdexcept>
#include <string>

namespace hsurf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An Approx enclosure was too wide to decide a comparison, floor or quotient.
struct PrecisionExhausted : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct NonReducedFraction : DomainError {
    using DomainError::DomainError;
};

struct SlopeOutsideTongue : DomainError {
    using DomainError::DomainError;
};

// Raised by the crossing verifier; `index` is the first failing j.
struct CrossingAssertion : Error {
    long index;
    CrossingAssertion(long j, const std::string& what)
        : Error("crossing check failed at j=" + std::to_string(j) + ": " + what), index(j) {}
};

}  // namespace hsurf
