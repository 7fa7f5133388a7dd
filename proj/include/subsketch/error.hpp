#pragma once

#include <stdexcept>
#include <string>

namespace subsketch {

//! Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! An argument lies outside the domain of an operation (e.g. p > anchor).
class DomainError : public Error {
public:
    using Error::Error;
};

//! Invalid parameter combination; the CLI maps this to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

//! Not enough samples landed in an interval to form one full group.
class InsufficientSamples : public Error {
public:
    using Error::Error;
};

//! A solver strategy cannot handle the requested input size.
class StrategyError : public Error {
public:
    using Error::Error;
};

//! The brute-force oracle was asked for an instance beyond its reach.
class OracleScaleError : public Error {
public:
    using Error::Error;
};

//! Malformed instance or report file. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace subsketch
