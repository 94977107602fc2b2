#pragma once

#include <stdexcept>
#include <string>

namespace ospchain {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Evaluation hit a zero of a denominator. `point` is the rendered location.
class PoleError : public Error {
 public:
  PoleError(std::string point, const std::string& what)
      : Error(what), point_(std::move(point)) {}
  explicit PoleError(std::string point)
      : Error("pole at " + point), point_(std::move(point)) {}

  const std::string& point() const noexcept { return point_; }

 private:
  std::string point_;
};

/// A constructor argument violates a documented constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Request outside the supported domain (unsupported rank, level, label...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace ospchain
