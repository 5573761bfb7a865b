#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wolff {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point query fell outside every root of the lattice window.
struct OutOfWindow : Error {
    using Error::Error;
};

/// A ball carries no sigma mass, so the averaged kernel is undefined there.
struct EmptyBall : Error {
    using Error::Error;
};

/// A radial integral diverges; `exponent` is the offending power of r.
struct DivergentTail : Error {
    DivergentTail(const std::string &what, double exponent)
            : Error(what)
            , exponent(exponent) {}
    double exponent;
};

/// The optimizer was asked to work with an empty sigma.
struct NoMass : Error {
    using Error::Error;
};

/// The exhaustive best-constant oracle only supports up to 3 sigma atoms.
struct TooManyAtoms : Error {
    using Error::Error;
};

/// A Carleson cube carries positive sum but zero mu mass.
struct Infeasible : Error {
    using Error::Error;
};

/// Evaluating an unbounded kernel exactly at an atom location.
struct SingularEvaluation : Error {
    using Error::Error;
};

/// Instance file could not be parsed; `position` is the byte offset.
struct ParseError : Error {
    ParseError(const std::string &what, std::size_t position)
            : Error(what)
            , position(position) {}
    std::size_t position;
};

/// A self-check failed (certificate does not recompute, discrepancy too large, ...).
struct InvariantViolation : Error {
    using Error::Error;
};

/// The instance generator exhausted its retry budget for the requested DLBO ceiling.
struct TargetAUnreachable : Error {
    using Error::Error;
};

} // namespace wolff
