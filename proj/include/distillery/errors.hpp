#pragma once

#include <stdexcept>
#include <string>

namespace distillery {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document (JSON, CSV, .real). Carries the byte offset when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t position = npos)
        : Error(what), position_(position) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A placement cannot fit under the configured wire limit.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A scripted oracle ran out of verdicts.
class OracleExhausted : public Error {
public:
    using Error::Error;
};

/// RevLib gate mnemonic outside the supported MCT subset.
class UnsupportedGate : public ParseError {
public:
    using ParseError::ParseError;
};

}  // namespace distillery
