#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace colsnn {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid wiring, mismatched dimensions or an out-of-range configuration value.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed user data (pixel values, empty horizons, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// An encoder was asked for more positions or codes than it was built for.
class CapacityError : public Error {
public:
    using Error::Error;
};

class FileError : public Error {
public:
    using Error::Error;
};

// Parse failure with a 1-based line number (0 when not applicable).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Non-finite state encountered while integrating; step < 0 when unknown.
class SimulationFault : public Error {
public:
    SimulationFault(const std::string& what, std::int64_t step)
        : Error(what + " at step " + std::to_string(step)), step_(step) {}

    std::int64_t step() const noexcept { return step_; }

private:
    std::int64_t step_;
};

}  // namespace colsnn
