#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rseri {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input value outside its documented domain (bad coordinate, bad fraction, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Carries a 1-based line/column when known (0 = unknown).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message)
        : Error(message) {}
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

/// Invalid or inconsistent pipeline configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace rseri
