#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bongle {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed bongle text. `position` is a byte offset into the input.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position = 0;
};

/// A bongle needs at least two charms; triangulation needs at least three.
struct NTooSmallError : Error {
    using Error::Error;
};

/// Operation requires an alternating bongle.
struct NonAlternatingError : Error {
    using Error::Error;
};

/// Operation requires a non-alternating bongle.
struct AlternatingInputError : Error {
    using Error::Error;
};

/// Requested enumeration size exceeds the configured cap.
struct EnumerationCapError : Error {
    using Error::Error;
};

/// Angle data does not describe a generalized hyperbolic tetrahedron
/// (Gram determinant nonnegative beyond tolerance).
struct NotRealizableError : Error {
    using Error::Error;
};

/// An angle assignment has the wrong number of entries.
struct DimensionMismatchError : Error {
    using Error::Error;
};

/// A `--verify` cross-check between two independent volume routes failed.
struct VerificationError : Error {
    using Error::Error;
};

}  // namespace bongle
