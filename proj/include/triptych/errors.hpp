#pragma once

#include <stdexcept>
#include <string>

namespace triptych {

/// Shape mismatch between operands or malformed dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input violates a documented precondition (non-bijective permutation,
/// coprimality, non-PSD secret, unknown party label, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that should be a density is not (negative eigenvalue, trace).
class InvalidDensity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The code-space basis built from a tensor is not orthonormal.
class CodeSpaceError : public std::runtime_error {
 public:
  CodeSpaceError(const std::string& what, double gram_deviation)
      : std::runtime_error(what), gram_deviation_(gram_deviation) {}
  double gram_deviation() const noexcept { return gram_deviation_; }

 private:
  double gram_deviation_;
};

/// The recovery map for the erased party is not unitary.
class RecoveryImpossible : public std::runtime_error {
 public:
  RecoveryImpossible(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Two routes that must agree mathematically disagreed numerically.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace triptych
