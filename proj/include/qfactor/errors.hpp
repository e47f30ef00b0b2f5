#pragma once

#include <stdexcept>
#include <string>

namespace qfactor {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// N is even; divide out 2 before calling.
struct EvenInputError : Error {
    using Error::Error;
};

/// N below the smallest supported odd biprime (9).
struct TooSmallError : Error {
    using Error::Error;
};

/// A clause system admits no solution; the current bit-length candidate is wrong.
struct UnsatisfiableError : Error {
    using Error::Error;
};

/// The constant column disagrees with the low bit of N.
struct InconsistentColumnError : Error {
    using Error::Error;
};

/// Enumeration would exceed the configured variable cap.
struct TooLargeError : Error {
    using Error::Error;
};

/// Qubit or state-vector budget exceeded.
struct CapacityError : Error {
    using Error::Error;
};

/// A clause does not have the shape a synthesis template expects.
struct ShapeMismatchError : Error {
    using Error::Error;
};

/// Gate or operation references a qubit outside the registry.
struct UnknownQubitError : Error {
    using Error::Error;
};

/// A fresh qubit was required but an already-used one was supplied.
struct QubitReuseError : Error {
    using Error::Error;
};

/// Malformed circuit file.
struct ParseError : Error {
    ParseError(const std::string& what, int line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    int line_number;
};

/// Conditioning on an event of probability zero.
struct ZeroProbabilityError : Error {
    using Error::Error;
};

/// No reported assignment reconstructs to factors of N.
struct NoValidFactorsError : Error {
    using Error::Error;
};

} // namespace qfactor
