#pragma once

#include <stdexcept>
#include <string>

#include "injrad/vec.hpp"

namespace injrad {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A point or radius outside the set where a quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or sampling failure; carries the offending abscissa when known.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double location)
      : Error(what), location_(location) {}
  explicit NumericError(const std::string& what) : Error(what) {}

  double location() const { return location_; }

 private:
  double location_ = 0.0;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The hypotheses of the requested analysis do not hold for the input.
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

/// Numerics could not decide a classification in either direction.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedMapError : public Error {
 public:
  using Error::Error;
};

class AxisPlacementError : public Error {
 public:
  using Error::Error;
};

/// A search that should produce a verified certificate came back empty.
class NoCertificateError : public Error {
 public:
  NoCertificateError(const std::string& what, Point best) : Error(what), best_(std::move(best)) {}

  const Point& best_candidate() const { return best_; }

 private:
  Point best_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace injrad
