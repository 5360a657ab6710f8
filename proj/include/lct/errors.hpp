#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lct {

/// Base class of every error raised by the analyzer.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial text. `position` is a 0-based character offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Contract violation on an operation input (variable mismatch, index out of range, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The Milnor algebra is infinite dimensional: the singularity is not isolated.
class NonIsolatedError : public Error {
public:
    using Error::Error;
};

/// f is not in m^2, so the germ is smooth.
class SmoothGermError : public Error {
public:
    using Error::Error;
};

/// A truncation (s-order or x-degree) was too small to certify the result.
class TruncationInsufficient : public Error {
public:
    TruncationInsufficient(const std::string& what, int suggested_order)
        : Error(what), suggested_order_(suggested_order) {}
    int suggested_order() const noexcept { return suggested_order_; }

private:
    int suggested_order_;
};

/// The residue matrix has an eigenvalue that is not rational.
class IrrationalExponent : public Error {
public:
    using Error::Error;
};

/// An internal cross-check failed (multiplicity count, symmetry, ...).
class ConsistencyFailure : public Error {
public:
    using Error::Error;
};

/// A vector field has a coefficient with nonzero constant term.
class NotInMDelta : public Error {
public:
    using Error::Error;
};

}  // namespace lct
