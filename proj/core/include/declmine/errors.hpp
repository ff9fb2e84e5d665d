#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace declmine {

/// Malformed input data (bad CSV row, unparseable timestamp, ...).
/// `line()` is the 1-based line of the offending record, 0 if unknown.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Structurally valid input that violates a log-level invariant
/// (duplicate event id, empty log, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace declmine
