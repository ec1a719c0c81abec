#pragma once

// Independent oracles and fixtures shared by the unit tests and the acceptance binary.
// Deliberately avoids the library's own partial trace and entropy code.

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "triptych/codespace.hpp"
#include "triptych/random_lab.hpp"

namespace triptych::testing {

using Index = Eigen::Index;

inline double oracle_entropy_bits(const ComplexMatrix& rho) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(rho, false);
  double s = 0.0;
  for (Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double x = es.eigenvalues()(k).real();
    if (x > 1e-14) s -= x * std::log2(x);
  }
  return s;
}

/// Partial trace of a 3-qubit density keeping the bits set in `mask` (bit 2 = P1, bit 0 = P3).
inline ComplexMatrix oracle_keep(const ComplexMatrix& rho, unsigned mask) {
  std::vector<int> kept;
  for (int b = 2; b >= 0; --b)
    if (mask & (1u << b)) kept.push_back(b);
  const Index dk = Index(1) << kept.size();
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Index x = 0; x < 8; ++x)
    for (Index y = 0; y < 8; ++y) {
      if ((x & ~mask & 7) != (y & ~mask & 7)) continue;  // traced bits must match
      Index kx = 0, ky = 0;
      for (int b : kept) {
        kx = (kx << 1) | ((x >> b) & 1);
        ky = (ky << 1) | ((y >> b) & 1);
      }
      out(kx, ky) += rho(x, y);
    }
  return out;
}

inline double oracle_i3_bits(const ComplexMatrix& rho) {
  const double s1 = oracle_entropy_bits(oracle_keep(rho, 4)), s2 = oracle_entropy_bits(oracle_keep(rho, 2)),
               s3 = oracle_entropy_bits(oracle_keep(rho, 1));
  const double s12 = oracle_entropy_bits(oracle_keep(rho, 6)), s13 = oracle_entropy_bits(oracle_keep(rho, 5)),
               s23 = oracle_entropy_bits(oracle_keep(rho, 3));
  return s1 + s2 + s3 - s12 - s13 - s23 + oracle_entropy_bits(rho);
}

/// Reduced states of a bipartite pure state psi(a db + b) from its Schmidt decomposition.
struct SchmidtMarginals {
  ComplexMatrix rho_a;
  ComplexMatrix rho_b;
};

inline SchmidtMarginals schmidt_marginals(const ComplexVector& psi, Index da, Index db) {
  // M(a, b) = psi(a db + b) = U S V†, so rho_A = U S^2 U† and rho_B = conj(V) S^2 V^T.
  const ComplexMatrix m = Eigen::Map<const ComplexMatrix>(psi.data(), db, da).transpose();
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index k = svd.singularValues().size();
  const ComplexVector s2 = svd.singularValues().array().square().cast<cd>();
  return {svd.matrixU().leftCols(k) * s2.asDiagonal() * svd.matrixU().leftCols(k).adjoint(),
          svd.matrixV().leftCols(k).conjugate() * s2.asDiagonal() * svd.matrixV().leftCols(k).transpose()};
}

/// Applies u to leg `leg` (0 = R, 1..3 = P1..P3) of a uniform tensor.
inline Tensor4cd apply_on_leg(const Tensor4cd& t, int leg, const ComplexMatrix& u) {
  const Index d = t.r();
  Tensor4cd next = Tensor4cd::uniform(d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      for (Index c = 0; c < d; ++c)
        for (Index e = 0; e < d; ++e) {
          const std::array<Index, 4> idx{a, b, c, e};
          cd acc = 0.0;
          for (Index j = 0; j < d; ++j) {
            auto src = idx;
            src[leg] = j;
            acc += u(idx[leg], j) * t(src[0], src[1], src[2], src[3]);
          }
          next(a, b, c, e) = acc;
        }
  return next;
}

/// shift_code(d,1,2) with an independent Haar unitary on each of the four legs; still perfect.
inline Tensor4cd dressed_shift_code(Index d, std::uint64_t seed) {
  Tensor4cd t = shift_code(d, 1, 2);
  for (int leg = 0; leg < 4; ++leg) t = apply_on_leg(t, leg, sample_haar_unitary(d, seed * 10 + leg));
  return t;
}

/// Multiplies fold(t, P1) by exp(i eps H) for a random Hermitian H and unfolds. Fold P1 stays
/// unitary, so the code space stays orthonormal, while the other two folds drift.
inline Tensor4cd perturbed_along_p1(const Tensor4cd& t, double eps, std::uint64_t seed) {
  const Index n = t.r() * t.party_dim(Leg::P1);
  const ComplexMatrix g = sample_ginibre(n, seed);
  const ComplexMatrix h = (g + g.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const ComplexVector phases = (cd(0.0, eps) * es.eigenvalues().cast<cd>()).array().exp();
  const ComplexMatrix rot = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return unfold(ComplexMatrix(fold(t, Leg::P1) * rot), t.dims(), Leg::P1);
}

}  // namespace triptych::testing
