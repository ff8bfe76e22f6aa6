#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gainprophet {

/// Base of every error raised by the library. All of them describe bad input;
/// the CLI maps them to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based and counts the header line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input parsed but violates a domain invariant (duplicate year, bad code, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Too few observations for the requested operation.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Root bracket has no sign change.
class NoRootError : public Error {
 public:
  using Error::Error;
};

}  // namespace gainprophet
