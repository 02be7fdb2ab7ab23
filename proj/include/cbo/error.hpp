#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cbo {

/// Raised when an operation's mathematical precondition is violated
/// (shape mismatch, non-triangular Borel element, invalid rank profile, ...).
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; column 0 means
/// "whole line".
class ParseError : public DomainError {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : DomainError("line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace cbo
