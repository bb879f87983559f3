#pragma once

#include <stdexcept>
#include <string>

namespace gco {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite or degenerate geometric input.
struct InvalidGeometryError : Error {
    using Error::Error;
};

// Input violates a documented precondition (bad scenario, bad token, size mismatch, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Query outside map bounds or parameter outside its admissible range.
struct OutOfBoundsError : Error {
    using Error::Error;
};

// A velocity oracle misbehaved (non-finite output, distribution not normalized).
struct SamplingError : Error {
    using Error::Error;
};

// Lookup by id failed.
struct NotFoundError : Error {
    using Error::Error;
};

}  // namespace gco
