#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qjacobi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class ZeroDivision : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Eigenvalues of a real counterpart Gram matrix failed to group into fours.
class MultiplicityViolation : public Error {
public:
    using Error::Error;
};

} // namespace qjacobi
