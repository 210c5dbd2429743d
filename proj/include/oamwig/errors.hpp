#pragma once

#include <stdexcept>
#include <string>

namespace oamwig {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition was violated (bad indices, parity, r <= 0, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Index outside the range where the special functions are evaluated reliably.
class OrderBoundError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// A numerical self-check failed (quadrature residue, truncation, convergence).
class NumericalError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace oamwig
