#pragma once

#include <stdexcept>
#include <string>

namespace hystbl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the admissible domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// A bracketing or iterative solve did not converge.
struct ConvergenceError : Error {
  using Error::Error;
};

// Sign scan found no bracket; the residual never changes sign.
struct NoSignChangeError : ConvergenceError {
  using ConvergenceError::ConvergenceError;
};

// Requested wave pair admits no viscous profile.
struct NotAdmissibleError : Error {
  using Error::Error;
};

// ODE step control collapsed below the minimum step size.
struct StiffError : Error {
  using Error::Error;
};

// Experiment configuration is malformed or inconsistent.
struct ConfigError : Error {
  using Error::Error;
};

// Nonlinear pressure solve failed; message carries the iteration trace.
struct NonlinearSolveError : Error {
  using Error::Error;
};

}  // namespace hystbl
