#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netgroups {

/// Malformed edge-list or configuration input. line() is 1-based; 0 when the
/// error is not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace netgroups
