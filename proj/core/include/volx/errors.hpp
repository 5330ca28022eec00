#pragma once

#include <stdexcept>
#include <string>

namespace volx {

/// Two objects that must live on the same coordinate chart do not.
class ChartMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A form degree outside the range an operation accepts.
class DegreeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A non-finite value showed up where a finite one is required.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Matrix inversion refused (singular or condition number too large).
class SingularMatrix : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Expression parse failure; `offset` is the byte position in the input.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

}  // namespace volx
