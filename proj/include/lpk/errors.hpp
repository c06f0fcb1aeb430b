#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph, matrix or element text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A caller violated an operation's precondition (bad subset, mismatched dimensions, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configurable size or search cap was hit before the computation finished.
class CapExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace lpk
