#include <doctest.h>

#include "triptych/codespace.hpp"
#include "triptych/random_lab.hpp"
#include "support.hpp"

using namespace triptych;
using Index = Eigen::Index;
using triptych::testing::dressed_shift_code;

namespace {

// Builds the tensor of a code whose |i~> are given as lists of (s1, s2, s3) kets with equal weight.
Tensor4cd tensor_from_kets(Index d, const std::vector<std::vector<std::array<Index, 3>>>& kets) {
  Tensor4cd t = Tensor4cd::uniform(d);
  for (Index i = 0; i < d; ++i)
    for (const auto& k : kets[i]) t(i, k[0], k[1], k[2]) += 1.0;
  return t;
}

Permutation shift_perm(Index d, Index k) {
  Permutation p(d);
  for (Index s = 0; s < d; ++s) p[s] = (s + k) % d;
  return p;
}

// Exhaustive (ortho2) scan written independently of check_ortho2.
bool ortho2_oracle(Index d, const std::array<Permutation, 3>& sig) {
  for (Index i = 1; i < d; ++i)
    for (Index s = 0; s < d; ++s) {
      std::array<Index, 3> img{};
      for (int a = 0; a < 3; ++a) {
        Index x = s;
        for (Index k = 0; k < i; ++k) x = sig[a][x];
        img[a] = x;
      }
      if (img[0] == img[1] || img[0] == img[2] || img[1] == img[2]) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("CodeSpace construction") {
  const auto cs = CodeSpace::from_tensor(shift_code(3, 1, 2));
  CHECK(cs.r() == 3);
  CHECK(cs.basis().cols() == 3);
  CHECK(cs.basis().rows() == 27);
  CHECK(cs.gram_deviation() < 1e-14);

  Tensor4cd flat(std::array<Index, 4>{3, 3, 3, 3}, ComplexVector::Constant(81, 1.0 / std::pow(3.0, 1.5)));
  CHECK_THROWS_AS(CodeSpace::from_tensor(flat), CodeSpaceError);
  try {
    CodeSpace::from_tensor(flat);
  } catch (const CodeSpaceError& e) {
    CHECK(e.gram_deviation() > 0.5);
  }
}

TEST_CASE("basis vectors follow (1/sqrt d1) t") {
  const auto cs = CodeSpace::from_tensor(shift_code(3, 1, 2));
  // |1~> = (|012> + |120> + |201>)/sqrt 3
  ComplexVector expected = ComplexVector::Zero(27);
  for (Index x : {0 * 9 + 1 * 3 + 2, 1 * 9 + 2 * 3 + 0, 2 * 9 + 0 * 3 + 1}) expected(x) = 1.0 / std::sqrt(3.0);
  CHECK((cs.basis().col(1) - expected).norm() < 1e-15);
}

TEST_CASE("textbook d=3 code: corrected version is valid, printed version is not") {
  const std::vector<std::vector<std::array<Index, 3>>> corrected{
      {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}};
  const auto t = tensor_from_kets(3, corrected);
  const auto cs = CodeSpace::from_tensor(t);
  CHECK(cs.gram_deviation() < 1e-14);
  CHECK(t == shift_code(3, 1, 2));

  auto printed = corrected;
  printed[2][2] = {2, 0, 1};  // repeats a term of |1~>
  // Gram by direct summation: <1~|2~> = 1/3.
  CHECK_THROWS_AS(CodeSpace::from_tensor(tensor_from_kets(3, printed)), CodeSpaceError);
}

TEST_CASE("permutation codes") {
  const Index d = 3;
  const Permutation id = shift_perm(d, 0);
  CHECK(permutation_code(d, id, shift_perm(d, 1), shift_perm(d, 2)) == shift_code(d, 1, 2));
  CHECK_THROWS_AS(CodeSpace::from_tensor(permutation_code(d, id, id, id)), CodeSpaceError);
  CHECK_THROWS_AS(permutation_code(d, id, Permutation{0, 0, 1}, id), ValidationError);
  CHECK_THROWS_AS(permutation_code(d, id, Permutation{0, 1}, id), ValidationError);

  CHECK(permutation_power(shift_perm(5, 2), 3, 1) == (1 + 6) % 5);
  CHECK(permutation_power(Permutation{1, 2, 0}, 3, 2) == 2);
}

TEST_CASE("check_ortho2") {
  const Permutation id3 = shift_perm(3, 0);
  CHECK(check_ortho2(3, id3, shift_perm(3, 1), shift_perm(3, 2)).satisfied);

  const auto same = check_ortho2(3, shift_perm(3, 1), shift_perm(3, 1), shift_perm(3, 2));
  REQUIRE_FALSE(same.satisfied);
  CHECK(same.first_violation->a == 1);
  CHECK(same.first_violation->b == 2);
  CHECK(same.first_violation->power == 1);
  CHECK(same.first_violation->s == 0);

  const auto d4 = check_ortho2(4, shift_perm(4, 0), shift_perm(4, 1), shift_perm(4, 2));
  REQUIRE_FALSE(d4.satisfied);
  CHECK(d4.first_violation->a == 1);
  CHECK(d4.first_violation->b == 3);
  CHECK(d4.first_violation->power == 2);
  CHECK(d4.first_violation->s == 0);

  const Permutation swap{1, 0};
  const auto d2 = check_ortho2(2, Permutation{0, 1}, swap, swap);
  REQUIRE_FALSE(d2.satisfied);
  CHECK(d2.first_violation->a == 2);
  CHECK(d2.first_violation->b == 3);
  CHECK(d2.first_violation->power == 1);
  CHECK(d2.first_violation->s == 0);
}

TEST_CASE("property: check_ortho2 agrees with an exhaustive oracle on all S_3 triples and shift triples") {
  std::vector<Permutation> perms;
  Permutation p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  for (const auto& a : perms)
    for (const auto& b : perms)
      for (const auto& c : perms) CHECK(check_ortho2(3, a, b, c).satisfied == ortho2_oracle(3, {a, b, c}));
  for (Index d = 2; d <= 8; ++d)
    for (Index k1 = 0; k1 < d; ++k1)
      for (Index k2 = 0; k2 < d; ++k2) {
        const std::array<Permutation, 3> sig{shift_perm(d, 0), shift_perm(d, k1), shift_perm(d, k2)};
        CHECK(check_ortho2(d, sig[0], sig[1], sig[2]).satisfied == ortho2_oracle(d, sig));
      }
}

TEST_CASE("shift_code validation") {
  CHECK_THROWS_AS(shift_code(2, 1, 1), ValidationError);
  CHECK_THROWS_AS(shift_code(2, 1, 3), ValidationError);
  CHECK_THROWS_AS(shift_code(4, 1, 2), ValidationError);
  CHECK_THROWS_AS(shift_code(1, 1, 2), ValidationError);
  try {
    shift_code(6, 2, 1);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("k1 not coprime with d") != std::string::npos);
  }
  CHECK(multiunitarity_report(shift_code(5, 2, 3)).all_unitary());
}

TEST_CASE("vip_code") {
  CHECK_THROWS_AS(vip_code(1), ValidationError);
  for (Index d = 2; d <= 5; ++d) {
    const auto t = vip_code(d);
    CHECK_NOTHROW(CodeSpace::from_tensor(t));
    const auto rep = multiunitarity_report(t);
    CHECK(rep.legs[0].is_unitary);
    CHECK(rep.legs[1].is_unitary);
    CHECK_FALSE(rep.legs[2].is_unitary);
    CHECK(std::abs(rep.norms[2] * rep.norms[2] - double(d)) < 1e-9);
    // Entry check: t(i, i+k, k, l) = omega^{il}/sqrt d.
    const double pi = std::acos(-1.0);
    for (Index i = 0; i < d; ++i)
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
          const cd expected = std::polar(1.0 / std::sqrt(double(d)), 2 * pi * double(i * l) / double(d));
          CHECK(std::abs(t(i, (i + k) % d, k, l) - expected) < 1e-14);
        }
    CHECK(std::abs(t.coeffs().squaredNorm() - double(d * d)) < 1e-9);
  }
}

TEST_CASE("validated_secret") {
  CHECK_THROWS_AS(validated_secret(ComplexMatrix::Identity(3, 3), 3), ValidationError);
  CHECK_THROWS_AS(validated_secret(ComplexMatrix::Identity(2, 2) / 2.0, 3), ValidationError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(validated_secret(neg, 2), ValidationError);
}

TEST_CASE("purification") {
  const auto cs = CodeSpace::from_tensor(shift_code(3, 1, 2));
  ComplexMatrix pure = ComplexMatrix::Zero(3, 3);
  pure(0, 0) = 1.0;
  const auto phi0 = purify(cs, pure);
  // |0>^R |0~>, R is the most significant factor.
  ComplexVector expected = ComplexVector::Zero(81);
  expected.head(27) = cs.basis().col(0);
  CHECK(std::abs(std::abs(phi0.amplitudes().dot(expected)) - 1.0) < 1e-12);

  const auto uni = purify(cs, ComplexMatrix(ComplexMatrix::Identity(3, 3) / 3.0));
  const auto ref = uniform_purification(cs);
  CHECK(std::abs(std::abs(uni.amplitudes().dot(ref.amplitudes())) - 1.0) < 1e-12);
  for (Index i = 0; i < 3; ++i) {
    ComplexVector v = ComplexVector::Zero(81);
    v.segment(27 * i, 27) = cs.basis().col(i) / std::sqrt(3.0);
    CHECK((ref.amplitudes().segment(27 * i, 27) - v.segment(27 * i, 27)).norm() < 1e-14);
  }

  // Random rank-2 secret: Tr_R |phi><phi| = sum rho_ij |i~><j~| by direct assembly.
  Philox4x32 rng(5);
  const ComplexMatrix g = ginibre(3, 2, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  const auto phi = purify(cs, rho);
  ComplexMatrix code_state = ComplexMatrix::Zero(27, 27);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) code_state += rho(i, j) * cs.basis().col(i) * cs.basis().col(j).adjoint();
  ComplexMatrix traced = ComplexMatrix::Zero(27, 27);
  for (Index k = 0; k < 3; ++k) {
    const ComplexVector block = phi.amplitudes().segment(27 * k, 27);
    traced += block * block.adjoint();
  }
  CHECK((traced - code_state).norm() < 1e-10);
  // Tr over P1P2P3 gives the transpose of the secret.
  ComplexMatrix on_r(3, 3);
  for (Index a = 0; a < 3; ++a)
    for (Index b = 0; b < 3; ++b)
      on_r(a, b) = phi.amplitudes().segment(27 * b, 27).dot(phi.amplitudes().segment(27 * a, 27));
  CHECK((on_r - rho.transpose()).norm() < 1e-10);
}

TEST_CASE("recovery unitaries") {
  const auto t = shift_code(4, 1, 3);
  const auto u = recovery_unitaries(t);
  for (Leg leg : kAllLegs) CHECK(u[leg_index(leg)] == fold(t, leg));
  const auto us = recovery_unitaries(shift_code(5, 1, 3));
  for (const auto& m : us) {
    CHECK(unitarity(m).is_unitary);
    CHECK((m.array().abs2().rowwise().sum() - 1.0).abs().maxCoeff() < 1e-15);  // permutation rows
  }
  CHECK_THROWS_AS(recovery_unitaries(Tensor4cd(std::array<Index, 4>{2, 2, 2, 3})), DimensionError);
}

TEST_CASE("recovery") {
  const auto cs = CodeSpace::from_tensor(shift_code(3, 1, 2));
  Philox4x32 rng(11);
  for (int n = 0; n < 5; ++n) {
    const auto secret = validated_secret(hilbert_schmidt_density(3, rng), 3);
    for (Leg leg : kAllLegs) {
      const auto res = recover(cs, secret, leg);
      CHECK(res.fidelity >= 1 - 1e-10);
      CHECK((res.recovered_secret.matrix() - secret.matrix()).norm() < 1e-10);
      CHECK(res.ancilla_state.dim() == 9);
    }
  }
  const auto vip = CodeSpace::from_tensor(vip_code(3));
  const auto secret = validated_secret(hilbert_schmidt_density(3, rng), 3);
  CHECK(recover(vip, secret, Leg::P1).fidelity >= 1 - 1e-10);
  CHECK(recover(vip, secret, Leg::P2).fidelity >= 1 - 1e-10);
  try {
    recover(vip, secret, Leg::P3);
    FAIL("expected RecoveryImpossible");
  } catch (const RecoveryImpossible& e) {
    CHECK(e.residual() >= 2.0 - 1e-9);
  }
}

TEST_CASE("property: locally dressed shift codes recover every secret exactly") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto cs = CodeSpace::from_tensor(dressed_shift_code(3, seed));
    Philox4x32 rng(seed);
    const auto secret = validated_secret(random_pure_density(3, rng), 3);
    for (Leg leg : kAllLegs) CHECK(recover(cs, secret, leg).fidelity >= 1 - 1e-10);
  }
}
