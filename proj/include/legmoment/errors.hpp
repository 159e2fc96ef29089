#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace legmoment {

/// Malformed input bytes. `where` is a human-readable location such as
/// "byte 14" or "line 3".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::string where)
        : std::runtime_error(what + " (at " + where + ")"), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// File could not be opened, read, or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace legmoment
