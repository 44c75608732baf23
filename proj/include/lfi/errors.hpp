#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lfi {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation precondition (sizes, parameter ranges).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Input data is malformed or contains non-finite values.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: factorization, degeneracy, non-convergence.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Weights are all zero or contain non-finite entries.
class InvalidWeightsError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Every importance weight vanished; the posterior approximation is empty.
class DegeneratePosteriorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A simulator call failed; carries the replicate index that raised.
class SimulationError : public Error {
 public:
  SimulationError(std::size_t replicate, const std::string& what)
      : Error("simulation failed on replicate " + std::to_string(replicate) + ": " + what),
        replicate_(replicate) {}

  std::size_t replicate() const noexcept { return replicate_; }

 private:
  std::size_t replicate_;
};

}  // namespace lfi
