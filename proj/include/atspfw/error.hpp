#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atspfw {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed matrix text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string &what)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// No finite derangement or tour exists for the given matrix.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// A determining vertex was requested for a sequence whose total exceeds the bound.
class NoDeterminingVertex : public Error {
public:
    using Error::Error;
};

/// A permutation used as a row-reduction base has an infinite arc.
class InfiniteAssignment : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace atspfw
