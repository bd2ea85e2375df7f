#pragma once

#include <stdexcept>
#include <string>

namespace nullgeo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an API contract (mismatched dimensions, bad flags).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Input is degenerate for the operation (zero vector, zero gradient).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Metric is (near) singular or has the wrong signature at the point.
class DegenerateMetricError : public Error {
 public:
  using Error::Error;
};

/// Elementary function evaluated outside its domain (log of x <= 0, 1/0).
class EvaluationDomainError : public Error {
 public:
  using Error::Error;
};

/// Chart point or finite-difference stencil outside the surface domain.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The adapted null frame cannot be built at the point.
class FrameError : public Error {
 public:
  using Error::Error;
};

/// Gauss-map quantities requested at a ruled point (II(Zt,Zt) = 0).
class UnsupportedPointError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset) : Error(msg), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Surface or report file could not be read or has the wrong schema.
class LoadError : public Error {
 public:
  using Error::Error;
};

}  // namespace nullgeo
