#pragma once

// Four-leg tensor t_{i s1 s2 s3} and its three matrix foldings.
//
// Storage is row-major in the composite index ((i*d1 + s1)*d2 + s2)*d3 + s3.
// A folding on leg a maps the input pair (i, s_a) to the output pair of the
// two remaining legs in increasing order:
//   P1: (i, s1) -> (s2, s3)    P2: (i, s2) -> (s1, s3)    P3: (i, s3) -> (s1, s2)
// Row index of the output pair is (s_b * d_c + s_c); column index is (i * d_a + s_a).

#include <array>
#include <string>

#include "triptych/linalg.hpp"

namespace triptych {

enum class Leg { P1 = 0, P2 = 1, P3 = 2 };

inline constexpr std::array<Leg, 3> kAllLegs{Leg::P1, Leg::P2, Leg::P3};

inline int leg_index(Leg leg) { return static_cast<int>(leg); }
inline std::string leg_name(Leg leg) { return "P" + std::to_string(leg_index(leg) + 1); }

template <typename Scalar = cd>
class Tensor4 {
 public:
  using Index = Eigen::Index;
  using Dims = std::array<Index, 4>;
  using Coeffs = Vector<Scalar>;

  explicit Tensor4(const Dims& dims) : dims_(checked(dims)), coeffs_(Coeffs::Zero(size_of(dims_))) {}

  Tensor4(const Dims& dims, Coeffs coeffs) : dims_(checked(dims)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != size_of(dims_)) {
      throw DimensionError("Tensor4: coefficient count " + std::to_string(coeffs_.size()) +
                           " does not match dims product " + std::to_string(size_of(dims_)));
    }
    if (!coeffs_.allFinite()) throw ValidationError("Tensor4: non-finite coefficient");
  }

  /// r = d1 = d2 = d3 = d.
  static Tensor4 uniform(Index d) { return Tensor4(Dims{d, d, d, d}); }

  const Dims& dims() const { return dims_; }
  Index r() const { return dims_[0]; }
  Index party_dim(Leg leg) const { return dims_[1 + leg_index(leg)]; }
  bool is_uniform() const {
    return dims_[0] == dims_[1] && dims_[1] == dims_[2] && dims_[2] == dims_[3];
  }

  Index offset(Index i, Index s1, Index s2, Index s3) const {
    return ((i * dims_[1] + s1) * dims_[2] + s2) * dims_[3] + s3;
  }
  Scalar& operator()(Index i, Index s1, Index s2, Index s3) { return coeffs_(offset(i, s1, s2, s3)); }
  const Scalar& operator()(Index i, Index s1, Index s2, Index s3) const {
    return coeffs_(offset(i, s1, s2, s3));
  }

  const Coeffs& coeffs() const { return coeffs_; }

  bool operator==(const Tensor4& other) const {
    return dims_ == other.dims_ && coeffs_ == other.coeffs_;
  }

 private:
  static Index size_of(const Dims& d) { return d[0] * d[1] * d[2] * d[3]; }
  static Dims checked(const Dims& d) {
    for (Index x : d) {
      if (x <= 0) throw DimensionError("Tensor4: dimensions must be positive");
    }
    return d;
  }

  Dims dims_;
  Coeffs coeffs_;
};

using Tensor4cd = Tensor4<cd>;

namespace detail {

// Position of (s1, s2, s3) within the (row, column) pair of a folding.
struct FoldIndex {
  Eigen::Index row;
  Eigen::Index col;
};

template <typename Scalar>
FoldIndex fold_index(const Tensor4<Scalar>& t, Leg leg, Eigen::Index i, Eigen::Index s1,
                     Eigen::Index s2, Eigen::Index s3) {
  const auto& d = t.dims();
  switch (leg) {
    case Leg::P1:
      return {s2 * d[3] + s3, i * d[1] + s1};
    case Leg::P2:
      return {s1 * d[3] + s3, i * d[2] + s2};
    case Leg::P3:
    default:
      return {s1 * d[2] + s2, i * d[3] + s3};
  }
}

template <typename Scalar>
std::array<Eigen::Index, 2> fold_shape(const typename Tensor4<Scalar>::Dims& d, Leg leg) {
  switch (leg) {
    case Leg::P1:
      return {d[2] * d[3], d[0] * d[1]};
    case Leg::P2:
      return {d[1] * d[3], d[0] * d[2]};
    case Leg::P3:
    default:
      return {d[1] * d[2], d[0] * d[3]};
  }
}

template <typename Scalar, typename F>
void for_each_entry(const Tensor4<Scalar>& t, F&& f) {
  const auto& d = t.dims();
  for (Eigen::Index i = 0; i < d[0]; ++i)
    for (Eigen::Index s1 = 0; s1 < d[1]; ++s1)
      for (Eigen::Index s2 = 0; s2 < d[2]; ++s2)
        for (Eigen::Index s3 = 0; s3 < d[3]; ++s3) f(i, s1, s2, s3);
}

}  // namespace detail

/// Matrix folding of t on the given leg (t, t^R or t^Gamma for P1, P2, P3).
template <typename Scalar>
Matrix<Scalar> fold(const Tensor4<Scalar>& t, Leg leg) {
  const auto shape = detail::fold_shape<Scalar>(t.dims(), leg);
  Matrix<Scalar> m(shape[0], shape[1]);
  detail::for_each_entry(t, [&](auto i, auto s1, auto s2, auto s3) {
    const auto at = detail::fold_index(t, leg, i, s1, s2, s3);
    m(at.row, at.col) = t(i, s1, s2, s3);
  });
  return m;
}

/// Inverse of fold: rebuilds the tensor with the given dims from a folding.
template <typename Derived>
auto unfold(const Eigen::MatrixBase<Derived>& m, const std::array<Eigen::Index, 4>& dims, Leg leg) {
  using Scalar = typename Derived::Scalar;
  Tensor4<Scalar> t(dims);
  const auto shape = detail::fold_shape<Scalar>(dims, leg);
  if (m.rows() != shape[0] || m.cols() != shape[1]) {
    throw DimensionError("unfold: matrix shape does not match dims for leg " + leg_name(leg));
  }
  detail::for_each_entry(t, [&](auto i, auto s1, auto s2, auto s3) {
    const auto at = detail::fold_index(t, leg, i, s1, s2, s3);
    t(i, s1, s2, s3) = m(at.row, at.col);
  });
  return t;
}

struct UnitarityResidual {
  double deviation = 0.0;  // ||m†m - 1|| in operator norm
  bool is_unitary = false;
};

inline constexpr double kDefaultUnitarityTol = 1e-9;

template <typename Derived>
double isometry_deviation(const Eigen::MatrixBase<Derived>& m) {
  using PlainMatrix = typename Derived::PlainObject;
  const PlainMatrix gram = m.adjoint() * m;
  const PlainMatrix diff = gram - PlainMatrix::Identity(gram.rows(), gram.cols());
  const auto evals = hermitian_eigenvalues(diff);
  return static_cast<double>(std::max(std::abs(evals(0)), std::abs(evals(evals.size() - 1))));
}

template <typename Derived>
UnitarityResidual unitarity(const Eigen::MatrixBase<Derived>& m, double tol = kDefaultUnitarityTol) {
  if (m.rows() != m.cols()) {
    throw DimensionError("unitarity: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", not square");
  }
  if (m.rows() == 0) throw DimensionError("unitarity: empty matrix");
  const double dev = isometry_deviation(m);
  return {dev, dev <= tol};
}

struct MultiUnitarityReport {
  std::array<UnitarityResidual, 3> legs;  // t, t^R, t^Gamma
  std::array<double, 3> norms{};          // operator norms of the three foldings
  bool square = true;                     // false when r, d1, d2, d3 are not all equal

  bool all_unitary() const {
    return legs[0].is_unitary && legs[1].is_unitary && legs[2].is_unitary;
  }
  double max_deviation() const {
    return std::max({legs[0].deviation, legs[1].deviation, legs[2].deviation});
  }
};

/// Unitarity of all three foldings. Non-square foldings are never unitary;
/// their deviation is still reported as the isometry defect ||m†m - 1||.
template <typename Scalar>
MultiUnitarityReport multiunitarity_report(const Tensor4<Scalar>& t,
                                           double tol = kDefaultUnitarityTol) {
  MultiUnitarityReport report;
  report.square = t.is_uniform();
  for (Leg leg : kAllLegs) {
    const auto m = fold(t, leg);
    const int a = leg_index(leg);
    report.norms[a] = static_cast<double>(operator_norm(m));
    if (report.square) {
      report.legs[a] = unitarity(m, tol);
    } else {
      report.legs[a] = {isometry_deviation(m), false};
    }
  }
  return report;
}

}  // namespace triptych
