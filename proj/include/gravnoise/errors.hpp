#pragma once

#include <stdexcept>
#include <string>

namespace gravnoise {

// Every library failure derives from Error so callers (the CLI in particular)
// can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric argument violates an operation precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed structured input: mismatched lengths, coarse grids, bad triples.
class InputError : public Error {
 public:
  using Error::Error;
};

// Fixed-step integration refused because the step is too coarse.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

// Wavefield norm is zero or non-finite.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Action calibration impossible (all amplitudes zero).
class CalibrationError : public Error {
 public:
  using Error::Error;
};

// Correlation undefined (zero variance in one of the inputs).
class CorrelationError : public Error {
 public:
  using Error::Error;
};

// A computation produced NaN or Inf.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gravnoise
