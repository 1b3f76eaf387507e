#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chaindecomp {

/// Operands live over different fields (Q vs GF(p), or two moduli).
struct ContextMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Shapes or ambient dimensions do not fit together.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A matrix that must be invertible is not.
struct SingularError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A chain violates its shape invariants.
struct InvalidChain : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An invariant table is not the table of any chain.
struct NotRealizable : std::domain_error {
    using std::domain_error::domain_error;
};

/// A self-check on a computed result failed. Never expected on valid input.
struct VerificationError : std::logic_error {
    using std::logic_error::logic_error;
};

struct ParseError : std::runtime_error {
    std::size_t line;
    std::size_t column;

    ParseError(std::size_t line_, std::size_t column_, const std::string& what)
        : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + what),
          line(line_),
          column(column_) {}
};

}  // namespace chaindecomp
