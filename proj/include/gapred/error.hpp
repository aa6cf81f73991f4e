#pragma once

#include <stdexcept>
#include <string>

namespace gapred {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is outside the operation's domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The requested work exceeds a configured cap (enumeration budget, universe
/// size, theta grid, ...). The message names the offending size.
class RefusalError : public Error {
public:
    using Error::Error;
};

/// Exact integer arithmetic left the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Malformed JSON document. `position()` is the byte offset reported by the
/// parser, or the JSON pointer of the offending field for schema errors.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string position)
        : Error(what + " at " + position), position_(std::move(position)) {}

    const std::string& position() const noexcept { return position_; }

private:
    std::string position_;
};

/// A parsed document describes an instance that violates a type invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace gapred
