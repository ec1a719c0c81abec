#pragma once

// Small dense helpers on Hermitian matrices shared by every module.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "triptych/errors.hpp"

namespace triptych {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using cd = std::complex<double>;
using ComplexMatrix = Matrix<cd>;
using ComplexVector = Vector<cd>;
using RealVector = Eigen::VectorXd;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Ascending eigenvalues of a Hermitian matrix (only the lower triangle is read).
template <typename Derived>
auto hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& h) {
  using PlainMatrix = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<PlainMatrix> solver(h.derived(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().eval();
}

/// Largest singular value, via the smaller of m†m and mm†.
template <typename Derived>
auto operator_norm(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.rows() == 0 || m.cols() == 0) {
    throw DimensionError("operator_norm: empty matrix");
  }
  if (!m.allFinite()) {
    throw ValidationError("operator_norm: non-finite entry");
  }
  using PlainMatrix = typename Derived::PlainObject;
  const PlainMatrix gram = m.cols() <= m.rows() ? PlainMatrix(m.adjoint() * m)
                                                : PlainMatrix(m * m.adjoint());
  const auto evals = hermitian_eigenvalues(gram);
  return std::sqrt(std::max(evals(evals.size() - 1), Real(0)));
}

/// Applies f to the spectrum of a Hermitian matrix and reassembles V f(Λ) V†.
template <typename Derived, typename F>
auto hermitian_function(const Eigen::MatrixBase<Derived>& h, F f) {
  using PlainMatrix = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<PlainMatrix> solver(h.derived());
  auto evals = solver.eigenvalues().eval();
  for (Eigen::Index k = 0; k < evals.size(); ++k) evals(k) = f(evals(k));
  const PlainMatrix& v = solver.eigenvectors();
  return PlainMatrix(v * evals.asDiagonal() * v.adjoint());
}

/// Square root of a PSD matrix; rounding negatives are clipped to zero.
template <typename Derived>
auto psd_sqrt(const Eigen::MatrixBase<Derived>& h) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  return hermitian_function(h, [](Real x) { return std::sqrt(std::max(x, Real(0))); });
}

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
template <typename DerivedA, typename DerivedB>
double uhlmann_fidelity(const Eigen::MatrixBase<DerivedA>& rho,
                        const Eigen::MatrixBase<DerivedB>& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("uhlmann_fidelity: size mismatch");
  }
  const auto sqrt_rho = psd_sqrt(rho);
  const typename DerivedA::PlainObject inner = sqrt_rho * sigma * sqrt_rho;
  const auto evals = hermitian_eigenvalues(inner);
  double root_sum = 0.0;
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    root_sum += std::sqrt(std::max(static_cast<double>(evals(k)), 0.0));
  }
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

}  // namespace triptych
