#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sesqui {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched dimensions, missing inputs, out-of-range indices.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Malformed expression text. `position()` is the 0-based column of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at column " + std::to_string(position + 1) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Evaluation outside the domain of an operation (division by zero, log of a non-positive value).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The curve violates a geometric precondition (irregular point, non-constant osculating order).
class GeometryError : public Error {
 public:
  GeometryError(const std::string& message, double t)
      : Error(message + " at t = " + std::to_string(t)), t_(t) {}

  double t() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace sesqui
