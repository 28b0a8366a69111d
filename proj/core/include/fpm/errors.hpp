#pragma once

#include <stdexcept>
#include <string>

namespace fpm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WindowOutOfBounds : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidModeCount : public Error {
 public:
  using Error::Error;
};

/// Optical or solver configuration that violates a stated invariant.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class DegeneratePupil : public Error {
 public:
  using Error::Error;
};

class DegenerateField : public Error {
 public:
  using Error::Error;
};

class DegenerateReference : public Error {
 public:
  using Error::Error;
};

/// Bad magic, dimensions, or truncated payload in a binary grid file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Missing, malformed, unknown, or invalid manifest fields.
class ManifestError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf produced during a reconstruction.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fpm
