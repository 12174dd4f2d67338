#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sumfree {

/// Malformed textual input. `token` is the offending fragment as written.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::string token, std::size_t line = 0,
             std::size_t column = 0)
      : std::invalid_argument(message), token_(std::move(token)), line_(line), column_(column) {}

  const std::string& token() const noexcept { return token_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string token_;
  std::size_t line_;
  std::size_t column_;
};

/// A computation refused because it would exceed a named guard
/// (value cap, exhaustive size limit, enumeration ceiling).
class LimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace sumfree
