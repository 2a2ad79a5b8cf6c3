#pragma once

#include <stdexcept>
#include <string>

namespace fsg {

// Base class for everything thrown by the engine.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands live over different base dimensions or incompatible truncations.
struct DimensionError : Error {
    using Error::Error;
};

// Malformed textual input (polynomial expressions, configs, reports).
struct ParseError : Error {
    using Error::Error;
};

// A structural invariant of a value was violated at construction time.
struct InvariantError : Error {
    using Error::Error;
};

// A user-supplied star product failed a verification gate.
struct GateError : Error {
    using Error::Error;
};

// An operation was called outside its mathematical domain
// (non-invertible leading term, inexact division by nu, ...).
struct DomainError : Error {
    using Error::Error;
};

} // namespace fsg
