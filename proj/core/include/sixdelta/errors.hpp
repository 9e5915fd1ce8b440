#pragma once

#include <stdexcept>
#include <string>

namespace sixdelta {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Gamma-function argument sits on (or within 1e-12 of) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the supported domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two boundary points that must be distinct coincide.
class CoincidentPointsError : public Error {
 public:
  using Error::Error;
};

/// A rotation between antipodal unit vectors was requested.
class AntipodalError : public Error {
 public:
  using Error::Error;
};

/// Inputs that violate a documented precondition (bad labels, bad contour).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Contour quadrature failed to reach the requested tolerance.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// An oracle integral diverges or its estimate does not settle.
class NonConvergedError : public Error {
 public:
  using Error::Error;
};

}  // namespace sixdelta
