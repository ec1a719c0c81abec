#pragma once

// Code spaces S inside P1 P2 P3 spanned by |i~> = sum (1/sqrt(d1)) t_{i s1 s2 s3} |s1 s2 s3>,
// their constructors, purifications of secrets, and erasure recovery.

#include <array>
#include <optional>
#include <vector>

#include "triptych/infotheory.hpp"
#include "triptych/tensor.hpp"

namespace triptych {

inline constexpr double kOrthonormalityTol = 1e-9;

class CodeSpace {
 public:
  using Index = Eigen::Index;

  /// Builds the basis and checks <i~|j~> = delta_ij to 1e-9 (CodeSpaceError otherwise).
  static CodeSpace from_tensor(Tensor4cd t);

  const Tensor4cd& tensor() const { return tensor_; }
  /// (|R|, |P1|, |P2|, |P3|)
  const std::array<Index, 4>& party_dims() const { return tensor_.dims(); }
  Index r() const { return tensor_.r(); }
  Index party_dim(Leg leg) const { return tensor_.party_dim(leg); }
  bool is_uniform() const { return tensor_.is_uniform(); }

  /// Column i is |i~> in the d1*d2*d3 composite space.
  const ComplexMatrix& basis() const { return basis_; }
  double gram_deviation() const { return gram_deviation_; }

  Factors factors_with_reference() const;

 private:
  CodeSpace(Tensor4cd t, ComplexMatrix basis, double gram_deviation)
      : tensor_(std::move(t)), basis_(std::move(basis)), gram_deviation_(gram_deviation) {}

  Tensor4cd tensor_;
  ComplexMatrix basis_;
  double gram_deviation_;
};

/// A permutation of {0, ..., d-1} given by its images.
using Permutation = std::vector<Eigen::Index>;

/// sigma^power applied to s.
Eigen::Index permutation_power(const Permutation& sigma, Eigen::Index power, Eigen::Index s);

/// Basis element i uses the power p = i for i in 1..d-1 and p = d for i = 0,
/// so |i~> = (1/sqrt d) sum_s |sigma1^p(s), sigma2^p(s), sigma3^p(s)>.
Tensor4cd permutation_code(Eigen::Index d, const Permutation& sigma1, const Permutation& sigma2,
                           const Permutation& sigma3);

struct Ortho2Violation {
  int a = 0;  // 1-based party numbers, a < b
  int b = 0;
  Eigen::Index power = 0;
  Eigen::Index s = 0;
};

struct Ortho2Result {
  bool satisfied = true;
  std::optional<Ortho2Violation> first_violation;
};

/// sigma_a^i(s) != sigma_b^i(s) for all a < b, i in 1..d-1 and all s.
/// Scan order: pairs (1,2), (1,3), (2,3); then i; then s.
Ortho2Result check_ortho2(Eigen::Index d, const Permutation& sigma1, const Permutation& sigma2,
                          const Permutation& sigma3);

/// t_{i s1 s2 s3} = delta(s2, s1 + k1 i) delta(s3, s1 + k2 i) mod d.
/// Requires gcd(k1, d) = gcd(k2, d) = 1 and k1 != k2 mod d.
Tensor4cd shift_code(Eigen::Index d, Eigen::Index k1, Eigen::Index k2);

/// t_{ijkl} = (1/sqrt d) <j| lambda_k u_l |i> with lambda_k the shift by k and
/// u_l the phase omega^{il}, omega = exp(2 pi i / d). Requires d >= 2.
Tensor4cd vip_code(Eigen::Index d);

/// Checks the secret is an r x r density (PSD, unit trace to 1e-9); ValidationError otherwise.
DensityMatrix validated_secret(const ComplexMatrix& secret, Eigen::Index r);

/// |phi> = sum_i sqrt(lambda_i) |conj psi_i>^R |psi_i~>, factors (R, P1, P2, P3).
/// Tr_R gives sum rho_ij |i~><j~|; Tr_{P1P2P3} gives the transpose of the secret.
PureState purify(const CodeSpace& cs, const DensityMatrix& secret);
PureState purify(const CodeSpace& cs, const ComplexMatrix& secret);

/// (1/sqrt r) sum_i |i>^R |i~>.
PureState uniform_purification(const CodeSpace& cs);

/// U_a = fold(t, a) for a = 1, 2, 3. Uniform dims required; unitarity is not.
std::array<ComplexMatrix, 3> recovery_unitaries(const Tensor4cd& t);

struct RecoveryResult {
  DensityMatrix recovered_secret;  // on R
  DensityMatrix ancilla_state;     // on (P_a', P_a), labeled (Ancilla, P_a)
  double fidelity = 0.0;
  double unitarity_deviation = 0.0;
};

/// Encodes the secret, erases party `erased`, applies 1 (x) U_a† on the two
/// survivors and traces out the ancilla. RecoveryImpossible when U_a is not unitary.
RecoveryResult recover(const CodeSpace& cs, const DensityMatrix& secret, Leg erased,
                       double tol = kDefaultUnitarityTol);

}  // namespace triptych
