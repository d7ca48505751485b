#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdm {

/// Malformed diagram input. `line()` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line), message_(what) {}

    std::size_t line() const noexcept { return line_; }
    /// The description without the line prefix.
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

/// A caller broke a documented precondition (skew pair, double delete, lowered weight, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Both diagrams are empty; the distance is 0 and callers are expected to short-circuit.
class EmptyInstance : public std::runtime_error {
public:
    EmptyInstance() : std::runtime_error("both diagrams are empty") {}
};

class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace pdm
