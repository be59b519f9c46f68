#pragma once

#include <stdexcept>
#include <string>

namespace qsb {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Misuse of an API: bad shapes, out-of-range settings, unknown config keys.
struct ConfigError : Error {
    using Error::Error;
};

/// A wire or element index outside its valid range.
struct IndexError : Error {
    using Error::Error;
};

/// Problems with input data (files, series, windows).
struct DataError : Error {
    using Error::Error;
};

/// Malformed input text; carries the 1-based line number when known.
struct ParseError : DataError {
    ParseError(const std::string& what, long line)
        : DataError(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    long line_number;
};

/// A numerical check (equivalence, gradient, oracle) failed its tolerance.
struct NumericalError : Error {
    using Error::Error;
};

} // namespace qsb
