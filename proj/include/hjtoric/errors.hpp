#pragma once

#include <stdexcept>
#include <string>

namespace hjtoric {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates an operation's precondition (gcd, range, sign, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Blowups at orbifold points (r > 1) are not modeled.
class UnsupportedError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A continued fraction hit a zero intermediate denominator.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A configuration could not be contracted as promised.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The circle simulator reached a state its bookkeeping cannot explain.
class ModelInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace hjtoric
