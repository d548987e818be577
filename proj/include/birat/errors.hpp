#pragma once

#include <stdexcept>
#include <string>

namespace birat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The matrix I -/+ (h/2) f'(x) could not be factorized at the requested tolerance.
class SingularStepMatrix : public Error {
 public:
  SingularStepMatrix(const std::string& what, double h) : Error(what), h_(h) {}
  double step_size() const { return h_; }

 private:
  double h_;
};

class PoleAtTwoOverH : public Error {
 public:
  using Error::Error;
};

class NotASteadyState : public Error {
 public:
  using Error::Error;
};

class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class NotBirational : public Error {
 public:
  using Error::Error;
};

class DegenerateLinearTerm : public Error {
 public:
  using Error::Error;
};

class SingularImplicitSystem : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class DenominatorVanishes : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace birat
