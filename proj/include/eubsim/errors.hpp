#pragma once

#include <stdexcept>
#include <string>

namespace eubsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chain parameters outside their domain (N < 3, non-finite reals).
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// Bloch triple that does not describe a positive density matrix.
class InvalidState : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Matrix handed to the generic pipeline is not Hermitian, not unit trace,
/// or has an eigenvalue below the clamping window.
class NotDensityMatrix : public Error {
 public:
  using Error::Error;
};

/// lhs < Adabi bound. Only an implementation bug can trigger this.
class OrderingViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace eubsim
