#include "triptych/codespace.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace triptych {

using Index = Eigen::Index;

CodeSpace CodeSpace::from_tensor(Tensor4cd t) {
  const auto& d = t.dims();
  const Index composite = d[1] * d[2] * d[3];
  const double scale = 1.0 / std::sqrt(static_cast<double>(d[1]));
  // Row-major (i, s1, s2, s3) storage is column-major (composite x r).
  ComplexMatrix basis = Eigen::Map<const ComplexMatrix>(t.coeffs().data(), composite, d[0]) * scale;
  const ComplexMatrix gram = basis.adjoint() * basis;
  const double deviation = (gram - ComplexMatrix::Identity(d[0], d[0])).cwiseAbs().maxCoeff();
  if (!(deviation <= kOrthonormalityTol)) {
    throw CodeSpaceError("code-space basis is not orthonormal (Gram deviation " +
                             std::to_string(deviation) + ")",
                         deviation);
  }
  return CodeSpace(std::move(t), std::move(basis), deviation);
}

Factors CodeSpace::factors_with_reference() const {
  const auto& d = party_dims();
  return {{Party::R, d[0]}, {Party::P1, d[1]}, {Party::P2, d[2]}, {Party::P3, d[3]}};
}

namespace {

void require_bijection(Index d, const Permutation& sigma, const char* name) {
  if (static_cast<Index>(sigma.size()) != d) {
    throw ValidationError(std::string(name) + " has " + std::to_string(sigma.size()) +
                          " images, expected " + std::to_string(d));
  }
  std::vector<bool> hit(static_cast<std::size_t>(d), false);
  for (Index x : sigma) {
    if (x < 0 || x >= d || hit[static_cast<std::size_t>(x)]) {
      throw ValidationError(std::string(name) + " is not a bijection on {0..d-1}");
    }
    hit[static_cast<std::size_t>(x)] = true;
  }
}

Index mod(Index x, Index d) { return ((x % d) + d) % d; }

}  // namespace

Index permutation_power(const Permutation& sigma, Index power, Index s) {
  for (Index k = 0; k < power; ++k) s = sigma[static_cast<std::size_t>(s)];
  return s;
}

Tensor4cd permutation_code(Index d, const Permutation& sigma1, const Permutation& sigma2,
                           const Permutation& sigma3) {
  if (d < 1) throw ValidationError("permutation_code: d must be positive");
  require_bijection(d, sigma1, "sigma1");
  require_bijection(d, sigma2, "sigma2");
  require_bijection(d, sigma3, "sigma3");
  auto t = Tensor4cd::uniform(d);
  for (Index i = 0; i < d; ++i) {
    const Index power = i == 0 ? d : i;
    for (Index s = 0; s < d; ++s) {
      t(i, permutation_power(sigma1, power, s), permutation_power(sigma2, power, s),
        permutation_power(sigma3, power, s)) += 1.0;
    }
  }
  return t;
}

Ortho2Result check_ortho2(Index d, const Permutation& sigma1, const Permutation& sigma2,
                          const Permutation& sigma3) {
  require_bijection(d, sigma1, "sigma1");
  require_bijection(d, sigma2, "sigma2");
  require_bijection(d, sigma3, "sigma3");
  const std::array<const Permutation*, 3> sigma{&sigma1, &sigma2, &sigma3};
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      for (Index i = 1; i <= d - 1; ++i) {
        for (Index s = 0; s < d; ++s) {
          if (permutation_power(*sigma[a], i, s) == permutation_power(*sigma[b], i, s)) {
            return {false, Ortho2Violation{a + 1, b + 1, i, s}};
          }
        }
      }
    }
  }
  return {};
}

Tensor4cd shift_code(Index d, Index k1, Index k2) {
  if (d < 2) throw ValidationError("shift_code: d must be at least 2");
  if (std::gcd(k1, d) != 1) throw ValidationError("k1 not coprime with d");
  if (std::gcd(k2, d) != 1) throw ValidationError("k2 not coprime with d");
  if (mod(k1 - k2, d) == 0) throw ValidationError("k1 equals k2 mod d");
  auto t = Tensor4cd::uniform(d);
  for (Index i = 0; i < d; ++i) {
    for (Index s = 0; s < d; ++s) t(i, s, mod(s + k1 * i, d), mod(s + k2 * i, d)) = 1.0;
  }
  return t;
}

Tensor4cd vip_code(Index d) {
  if (d < 2) throw ValidationError("vip_code: d must be at least 2");
  auto t = Tensor4cd::uniform(d);
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) {
    for (Index k = 0; k < d; ++k) {
      for (Index l = 0; l < d; ++l) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((i * l) % d) / static_cast<double>(d);
        t(i, mod(i + k, d), k, l) = amplitude * std::polar(1.0, angle);
      }
    }
  }
  return t;
}

DensityMatrix validated_secret(const ComplexMatrix& secret, Index r) {
  if (secret.rows() != r || secret.cols() != r) {
    throw ValidationError("secret must be " + std::to_string(r) + "x" + std::to_string(r));
  }
  try {
    return DensityMatrix({{Party::R, r}}, secret);
  } catch (const InvalidDensity& e) {
    throw ValidationError(std::string("secret is not a density: ") + e.what());
  }
}

PureState purify(const CodeSpace& cs, const DensityMatrix& secret) {
  if (secret.dim() != cs.r()) {
    throw ValidationError("secret dimension " + std::to_string(secret.dim()) +
                          " does not match code dimension " + std::to_string(cs.r()));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(secret.matrix());
  const auto& lambda = eig.eigenvalues();
  const auto& psi = eig.eigenvectors();
  const Index r = cs.r();
  const Index composite = cs.basis().rows();

  // Column j holds the P1P2P3 amplitudes paired with |j>^R.
  ComplexMatrix blocks = ComplexMatrix::Zero(composite, r);
  for (Index k = 0; k < r; ++k) {
    if (lambda(k) <= 0.0) continue;
    const ComplexVector encoded = cs.basis() * psi.col(k);
    blocks += std::sqrt(lambda(k)) * encoded * psi.col(k).adjoint();
  }
  ComplexVector amplitudes = Eigen::Map<const ComplexVector>(blocks.data(), blocks.size());
  amplitudes.normalize();
  return PureState(cs.factors_with_reference(), std::move(amplitudes));
}

PureState purify(const CodeSpace& cs, const ComplexMatrix& secret) {
  return purify(cs, validated_secret(secret, cs.r()));
}

PureState uniform_purification(const CodeSpace& cs) {
  const Index r = cs.r();
  ComplexVector amplitudes = Eigen::Map<const ComplexVector>(cs.basis().data(), cs.basis().size());
  amplitudes /= std::sqrt(static_cast<double>(r));
  amplitudes.normalize();
  return PureState(cs.factors_with_reference(), std::move(amplitudes));
}

std::array<ComplexMatrix, 3> recovery_unitaries(const Tensor4cd& t) {
  if (!t.is_uniform()) throw DimensionError("recovery_unitaries: dims must be uniform");
  return {fold(t, Leg::P1), fold(t, Leg::P2), fold(t, Leg::P3)};
}

RecoveryResult recover(const CodeSpace& cs, const DensityMatrix& secret, Leg erased, double tol) {
  if (!cs.is_uniform()) throw ValidationError("recover: only uniform party dimensions are supported");
  const ComplexMatrix u = fold(cs.tensor(), erased);
  const UnitarityResidual residual = unitarity(u, tol);
  if (!residual.is_unitary) {
    throw RecoveryImpossible("recovery map for erased " + leg_name(erased) +
                                 " is not unitary (deviation " + std::to_string(residual.deviation) + ")",
                             residual.deviation);
  }

  const Index d = cs.r();
  const PureState phi = purify(cs, secret);
  const auto& amp = phi.amplitudes();
  const int a = leg_index(erased);

  // phi as (ref, s_a) x (s_b, s_c) with b < c the surviving parties.
  ComplexMatrix survivors(d * d, d * d);
  for (Index ref = 0; ref < d; ++ref)
    for (Index s1 = 0; s1 < d; ++s1)
      for (Index s2 = 0; s2 < d; ++s2)
        for (Index s3 = 0; s3 < d; ++s3) {
          const std::array<Index, 3> s{s1, s2, s3};
          const Index sa = s[a];
          const Index sb = s[a == 0 ? 1 : 0];
          const Index sc = s[a == 2 ? 1 : 2];
          survivors(ref * d + sa, sb * d + sc) = amp(((ref * d + s1) * d + s2) * d + s3);
        }

  // Apply U_a† to (s_b, s_c): columns become (i, s_a').
  const ComplexMatrix decoded = survivors * u.conjugate();

  // Regroup to read off R (index i) and the ancilla pair (s_a', s_a).
  ComplexMatrix by_r(d, d * d * d);
  ComplexMatrix by_ancilla(d * d, d * d);
  for (Index ref = 0; ref < d; ++ref)
    for (Index sa = 0; sa < d; ++sa)
      for (Index i = 0; i < d; ++i)
        for (Index sp = 0; sp < d; ++sp) {
          const cd v = decoded(ref * d + sa, i * d + sp);
          by_r(i, (ref * d + sa) * d + sp) = v;
          by_ancilla(sp * d + sa, ref * d + i) = v;
        }

  ComplexMatrix recovered = by_r * by_r.adjoint();
  ComplexMatrix ancilla = by_ancilla * by_ancilla.adjoint();
  const double fidelity = uhlmann_fidelity(recovered, secret.matrix());
  const Party pa = static_cast<Party>(a + 1);
  return RecoveryResult{DensityMatrix::trusted({{Party::R, d}}, std::move(recovered)),
                        DensityMatrix::trusted({{Party::Ancilla, d}, {pa, d}}, std::move(ancilla)),
                        fidelity, residual.deviation};
}

}  // namespace triptych
