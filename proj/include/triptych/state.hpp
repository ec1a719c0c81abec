#pragma once

// Labeled pure states and density matrices on the parties R, P1, P2, P3
// (plus one ancilla copy used by the recovery simulation).

#include <string>
#include <vector>

#include "triptych/linalg.hpp"

namespace triptych {

/// Party labels, in global order.
enum class Party { R = 0, P1 = 1, P2 = 2, P3 = 3, Ancilla = 4 };

std::string party_name(Party p);
Party parse_party(const std::string& name);

struct Factor {
  Party label;
  Eigen::Index dim;
  bool operator==(const Factor&) const = default;
};

using Factors = std::vector<Factor>;

/// Product of the factor dimensions; throws on duplicate labels or dim <= 0.
Eigen::Index checked_total_dim(const Factors& factors);

/// Unit vector on a tensor product of labeled factors, first factor most significant.
class PureState {
 public:
  PureState(Factors factors, ComplexVector amplitudes);

  const Factors& factors() const { return factors_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  bool has(Party p) const;
  Eigen::Index dim_of(Party p) const;

 private:
  Factors factors_;
  ComplexVector amplitudes_;
};

/// Hermitian PSD unit-trace matrix on labeled factors.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10), trace (1e-9) and the smallest eigenvalue (-1e-9).
  DensityMatrix(Factors factors, ComplexMatrix matrix);

  /// Skips the eigenvalue check; for matrices that are densities by construction.
  static DensityMatrix trusted(Factors factors, ComplexMatrix matrix);

  /// Single anonymous factor labeled R.
  static DensityMatrix on_reference(ComplexMatrix matrix);

  const Factors& factors() const { return factors_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  bool has(Party p) const;

 private:
  struct Trusted {};
  DensityMatrix(Factors factors, ComplexMatrix matrix, Trusted);

  Factors factors_;
  ComplexMatrix matrix_;
};

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kNegativeEigenTol = 1e-9;

}  // namespace triptych
