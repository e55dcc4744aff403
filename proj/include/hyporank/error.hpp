#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyporank {

// Base for every error raised by the library. Callers that only need a
// message can catch this; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input. `line` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class UnknownTermError : public Error {
public:
  explicit UnknownTermError(const std::string& term)
      : Error("unknown term \"" + term + "\""), term_(term) {}

  const std::string& term() const noexcept { return term_; }

private:
  std::string term_;
};

// A value is outside the domain of an operation (zero norm, zero radius,
// single-class labels, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// The request cannot be satisfied by the data (e.g. too few absent pairs).
class InfeasibleError : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  using Error::Error;
};

}  // namespace hyporank
