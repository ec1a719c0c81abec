#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "triptych/codespace.hpp"
#include "triptych/random_lab.hpp"

using namespace triptych;
using Index = Eigen::Index;

namespace {

ComplexMatrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n;
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = cd(n(gen), n(gen));
  return m;
}

// Largest singular value by power iteration on m†m.
double power_iteration_norm(const ComplexMatrix& m) {
  ComplexVector v = ComplexVector::Ones(m.cols());
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    ComplexVector w = m.adjoint() * (m * v);
    lambda = w.norm();
    v = w / lambda;
  }
  return std::sqrt(lambda);
}

Tensor4cd random_tensor(const std::array<Index, 4>& dims, std::uint64_t seed) {
  const Index n = dims[0] * dims[1] * dims[2] * dims[3];
  return Tensor4cd(dims, random_matrix(n, 1, seed).col(0));
}

}  // namespace

TEST_CASE("delta tensor: identity on P1, SWAP on P3") {
  // t_{i s1 s2 s3} = delta(i, s2) delta(s1, s3) at d = 2.
  Tensor4cd t = Tensor4cd::uniform(2);
  for (Index i = 0; i < 2; ++i)
    for (Index s1 = 0; s1 < 2; ++s1) t(i, s1, i, s1) = 1.0;

  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;

  // Rows (s2 s3), columns (i s1): the entry at row (i s1) and column (i s1) is 1.
  CHECK(fold(t, Leg::P1).isApprox(ComplexMatrix::Identity(4, 4)));
  // Rows (s1 s2), columns (i s3): row (s1, i), column (i, s1).
  CHECK(fold(t, Leg::P3).isApprox(swap));
}

TEST_CASE("shift_code(3,1,2) P1 fold matches brute-force enumeration") {
  const Index d = 3;
  const auto t = shift_code(d, 1, 2);
  const ComplexMatrix f = fold(t, Leg::P1);
  REQUIRE(f.rows() == 9);
  ComplexMatrix expected = ComplexMatrix::Zero(9, 9);
  for (Index i = 0; i < d; ++i)
    for (Index s1 = 0; s1 < d; ++s1)
      for (Index s2 = 0; s2 < d; ++s2)
        for (Index s3 = 0; s3 < d; ++s3)
          if (s2 == (s1 + i) % d && s3 == (s1 + 2 * i) % d) expected(s2 * d + s3, i * d + s1) = 1.0;
  CHECK((f - expected).norm() == 0.0);
  for (Index k = 0; k < 9; ++k) {
    CHECK(f.row(k).sum() == cd(1.0));
    CHECK(f.col(k).sum() == cd(1.0));
  }
}

TEST_CASE("fold/unfold round trip and equal Frobenius norms") {
  for (const std::array<Index, 4> dims :
       {std::array<Index, 4>{2, 2, 2, 2}, std::array<Index, 4>{3, 3, 3, 3}, std::array<Index, 4>{2, 3, 4, 5}}) {
    const auto t = random_tensor(dims, 7 + dims[3]);
    for (Leg leg : kAllLegs) {
      const ComplexMatrix f = fold(t, leg);
      CHECK(f.norm() == doctest::Approx(t.coeffs().norm()).epsilon(1e-14));
      CHECK(unfold(f, dims, leg) == t);
    }
  }
}

TEST_CASE("fold shapes follow the leg") {
  const auto t = random_tensor({2, 3, 4, 5}, 1);
  CHECK(fold(t, Leg::P1).rows() == 20);
  CHECK(fold(t, Leg::P1).cols() == 6);
  CHECK(fold(t, Leg::P2).rows() == 15);
  CHECK(fold(t, Leg::P2).cols() == 8);
  CHECK(fold(t, Leg::P3).rows() == 12);
  CHECK(fold(t, Leg::P3).cols() == 10);
  CHECK_THROWS_AS(unfold(ComplexMatrix::Zero(3, 3), t.dims(), Leg::P1), DimensionError);
}

TEST_CASE("malformed dims are rejected") {
  CHECK_THROWS_AS(Tensor4cd(std::array<Index, 4>{2, 0, 2, 2}), DimensionError);
  CHECK_THROWS_AS(Tensor4cd(std::array<Index, 4>{2, 2, 2, 2}, ComplexVector::Zero(15)), DimensionError);
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(ComplexMatrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(operator_norm(ComplexMatrix(0, 0)), DimensionError);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix m = random_matrix(4, 4, seed);
    CHECK(std::abs(operator_norm(m) - power_iteration_norm(m)) < 1e-8);
  }
  const ComplexMatrix wide = random_matrix(3, 7, 99);
  CHECK(std::abs(operator_norm(wide) - power_iteration_norm(wide)) < 1e-8);
  CHECK(operator_norm(wide) == doctest::Approx(operator_norm(ComplexMatrix(wide.adjoint()))));
  for (Index d = 2; d <= 6; ++d) {
    CHECK(std::abs(operator_norm(fold(vip_code(d), Leg::P3)) - std::sqrt(double(d))) < 1e-12);
  }
}

TEST_CASE("unitarity residual") {
  const auto id = unitarity(ComplexMatrix::Identity(4, 4));
  CHECK(id.deviation == 0.0);
  CHECK(id.is_unitary);
  CHECK_THROWS_AS(unitarity(ComplexMatrix::Zero(2, 3)), DimensionError);
  for (Leg leg : kAllLegs) {
    const auto res = unitarity(fold(shift_code(5, 1, 2), leg));
    CHECK(res.deviation < 1e-12);
    CHECK(res.is_unitary);
  }
  // The nonzero singular values of the VIP P3 fold are all sqrt(d), so m†m - 1 has eigenvalue d - 1.
  for (Index d = 2; d <= 5; ++d) {
    const auto res = unitarity(fold(vip_code(d), Leg::P3));
    CHECK(res.deviation >= d - 1 - 1e-9);
    CHECK_FALSE(res.is_unitary);
  }
  // Haar unitaries are unitary; a scaled copy is not.
  const ComplexMatrix u = sample_haar_unitary(6, 3);
  CHECK(unitarity(u).is_unitary);
  CHECK_FALSE(unitarity(ComplexMatrix(1.01 * u)).is_unitary);
}

TEST_CASE("multiunitarity report") {
  CHECK(multiunitarity_report(shift_code(5, 2, 3)).all_unitary());
  CHECK(multiunitarity_report(shift_code(7, 1, 3)).all_unitary());
  // k1, k2 coprime with d is not enough: the P1 fold sends (i, s1) to (s1 + k1 i, s1 + k2 i),
  // a bijection only when k2 - k1 is a unit mod d. At d = 4, k2 - k1 = 2 is not.
  const auto even = multiunitarity_report(shift_code(4, 1, 3));
  CHECK_FALSE(even.legs[0].is_unitary);
  CHECK(even.legs[1].is_unitary);
  CHECK(even.legs[2].is_unitary);
  const auto vip = multiunitarity_report(vip_code(3));
  CHECK(vip.legs[0].is_unitary);
  CHECK(vip.legs[1].is_unitary);
  CHECK_FALSE(vip.legs[2].is_unitary);
  CHECK(vip.norms[2] * vip.norms[2] == doctest::Approx(3.0).epsilon(1e-12));
  const auto zero = multiunitarity_report(Tensor4cd::uniform(3));
  for (const auto& leg : zero.legs) {
    CHECK_FALSE(leg.is_unitary);
    CHECK(leg.deviation == doctest::Approx(1.0));
  }
  const auto rect = multiunitarity_report(random_tensor({2, 2, 2, 3}, 4));
  CHECK_FALSE(rect.square);
  CHECK_FALSE(rect.all_unitary());
}

TEST_CASE("property: shift-code P1 fold is unitary iff k2 - k1 is a unit") {
  for (Index d = 3; d <= 8; ++d)
    for (Index k1 = 1; k1 < d; ++k1)
      for (Index k2 = 1; k2 < d; ++k2) {
        if (k1 == k2 || std::gcd(k1, d) != 1 || std::gcd(k2, d) != 1) continue;
        // Oracle: count how many (i, s1) land on each (s2, s3).
        std::vector<int> hits(d * d, 0);
        for (Index i = 0; i < d; ++i)
          for (Index s1 = 0; s1 < d; ++s1) ++hits[((s1 + k1 * i) % d) * d + (s1 + k2 * i) % d];
        const bool bijective = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
        CHECK(bijective == (std::gcd(k2 - k1 + d, d) == 1));
        CHECK(unitarity(fold(shift_code(d, k1, k2), Leg::P1)).is_unitary == bijective);
      }
}

TEST_CASE("property: local unitaries preserve multi-unitarity") {
  const Index d = 3;
  const auto base = shift_code(d, 1, 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::array<ComplexMatrix, 4> u;
    for (int k = 0; k < 4; ++k) u[k] = sample_haar_unitary(d, 100 * seed + k);
    Tensor4cd t = Tensor4cd::uniform(d);
    for (Index i = 0; i < d; ++i)
      for (Index s1 = 0; s1 < d; ++s1)
        for (Index s2 = 0; s2 < d; ++s2)
          for (Index s3 = 0; s3 < d; ++s3) {
            cd acc = 0.0;
            for (Index j = 0; j < d; ++j)
              for (Index a = 0; a < d; ++a)
                for (Index b = 0; b < d; ++b)
                  for (Index c = 0; c < d; ++c)
                    acc += u[0](i, j) * u[1](s1, a) * u[2](s2, b) * u[3](s3, c) * base(j, a, b, c);
            t(i, s1, s2, s3) = acc;
          }
    CHECK(multiunitarity_report(t).all_unitary());
  }
}
