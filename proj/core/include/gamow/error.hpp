#pragma once

#include <stdexcept>
#include <string>

#include "gamow/common.hpp"

namespace gamow {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input that the caller could have checked up front.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A formula was asked for outside the region where it is valid.
class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A rational function or amplitude was evaluated exactly on one of its poles.
class PoleEvaluationError : public Error {
 public:
  using Error::Error;
};

/// Residue calculus needs every pole strictly off the real axis.
class RealPoleError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The integrand does not fall off fast enough for the requested integral.
class NonDecayingIntegrand : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Two resonance poles coincide; the pole/background split needs simple poles.
class DegeneratePoleError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The quadrature gave up before reaching the requested tolerance. Carries the
/// best value it had and the error estimate it achieved.
class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(const std::string& what, Complex best_value, double achieved)
      : Error(what), best_value_(best_value), achieved_(achieved) {}

  Complex best_value() const { return best_value_; }
  double achieved_estimate() const { return achieved_; }

 private:
  Complex best_value_;
  double achieved_;
};

/// An iterative fit or solve did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The lineshape sample has no interior maximum to fit.
class NoPeakError : public Error {
 public:
  using Error::Error;
};

class NoCrossoverError : public Error {
 public:
  using Error::Error;
};

/// The requested tail window is still dominated by the exponential branch.
class WindowTooEarlyError : public Error {
 public:
  using Error::Error;
};

class NonTimelikeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A supposed Wigner rotation moved the rest-frame 4-velocity.
class RotationCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace gamow
