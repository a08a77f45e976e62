#pragma once

#include <stdexcept>
#include <string>

namespace nanomc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Scenario, grid or command-line configuration is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A population covariance is not a valid (PSD) covariance.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on a component with zero variance.
class DegenerateConditioningError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Detection moments cannot define a decision threshold.
class DetectionSetupError : public Error {
 public:
  using Error::Error;
};

/// Linear solve, factorization or series evaluation failed.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Two ligand classes share an unbinding rate, so interval bins collapse.
class DegenerateSchemeError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The interval bin-probability matrix is too ill-conditioned to invert.
class IllConditionedSchemeError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Particles can never reach the release point (no drift, no diffusion).
class NeverReleasesError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace nanomc
