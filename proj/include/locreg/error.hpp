#pragma once

#include <stdexcept>
#include <string>

namespace locreg {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation (negative radius,
// k larger than the landmark count, geometry outside the unit square).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A kernel, method or config value is not a supported combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Landmark data that cannot define an interpolation problem (duplicate
// sources, mismatched shapes).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// The interpolation system is singular or rank deficient.
class SolvabilityError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Well-formed input that violates a semantic rule (quasi-landmark moved).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Every parameter value of a sweep failed to produce a transformation.
class SweepError : public Error {
 public:
  using Error::Error;
};

}  // namespace locreg
