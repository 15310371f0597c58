#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epiq {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy shallow.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments: out-of-range parameters, size mismatches, empty graphs.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Argument outside the mathematical domain of a function (zeta at 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A requested series or moment is infinite.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Iteration cap reached without meeting the tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Quantity undefined at this input (post-quarantine functions at u = 0).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// FWHM requested on a window whose peak has no half-maximum crossing.
class UndefinedWidthError : public Error {
 public:
  using Error::Error;
};

}  // namespace epiq
