#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace noether {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression source. `offset` is the byte position of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(const std::string& token, std::size_t offset)
      : ParseError("unknown identifier '" + token + "'", offset), token_(token) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class UnassignedVariableError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

/// ln of a nonpositive number, division by zero, sqrt of a negative, or any
/// other nonfinite intermediate.
class DomainError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised when the randomized zero test hits too many domain errors in the box.
class RetryCapExceeded : public Error {
 public:
  using Error::Error;
};

/// A cached partial derivative disagreed with finite differences.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ContinuityError : public Error {
 public:
  ContinuityError(const std::string& message, int coordinate, double breakpoint, double jump)
      : Error(message), coordinate_(coordinate), breakpoint_(breakpoint), jump_(jump) {}
  int coordinate() const { return coordinate_; }
  double breakpoint() const { return breakpoint_; }
  double jump() const { return jump_; }

 private:
  int coordinate_;
  double breakpoint_;
  double jump_;
};

class IdentityViolation : public Error {
 public:
  IdentityViolation(const std::string& message, std::string component)
      : Error(message), component_(std::move(component)) {}
  const std::string& component() const { return component_; }

 private:
  std::string component_;
};

}  // namespace noether
