#pragma once

#include <stdexcept>
#include <string>

namespace dirsim {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameters (CLI exit code 2).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class NotPositiveDefinite : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class UnsupportedDistribution : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class InsufficientSamples : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Numerical failures (CLI exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A proposal exceeded the envelope bound: the envelope is broken.
class BoundViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoAccepts : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TrialCapExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotConverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace dirsim
