// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twpad {

/// Precondition violated by a caller (bad radius, vertex outside a set, ...).
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input structure failed validation. `item` names the offending element.
class ValidationError : public std::runtime_error {
  public:
    ValidationError(const std::string& what, std::string item)
        : std::runtime_error(what + (item.empty() ? "" : " [" + item + "]")), item_(std::move(item)) {}

    const std::string& item() const noexcept { return item_; }

  private:
    std::string item_;
};

/// Malformed text input; carries the 1-based line number (0 when unknown).
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

namespace detail {
inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw ArgumentError(message);
    }
}
} // namespace detail

} // namespace twpad
