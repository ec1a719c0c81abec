#include "triptych/state.hpp"

#include <algorithm>
#include <set>

namespace triptych {

std::string party_name(Party p) {
  switch (p) {
    case Party::R: return "R";
    case Party::P1: return "P1";
    case Party::P2: return "P2";
    case Party::P3: return "P3";
    case Party::Ancilla: return "Ancilla";
  }
  return "?";
}

Party parse_party(const std::string& name) {
  if (name == "R") return Party::R;
  if (name == "P1") return Party::P1;
  if (name == "P2") return Party::P2;
  if (name == "P3") return Party::P3;
  if (name == "Ancilla") return Party::Ancilla;
  throw ValidationError("unknown party label '" + name + "'");
}

Eigen::Index checked_total_dim(const Factors& factors) {
  if (factors.empty()) throw DimensionError("state needs at least one factor");
  std::set<Party> seen;
  Eigen::Index total = 1;
  for (const auto& f : factors) {
    if (f.dim <= 0) throw DimensionError("factor " + party_name(f.label) + " has non-positive dim");
    if (!seen.insert(f.label).second) {
      throw ValidationError("duplicate party label " + party_name(f.label));
    }
    total *= f.dim;
  }
  return total;
}

namespace {

bool contains(const Factors& factors, Party p) {
  return std::any_of(factors.begin(), factors.end(), [p](const Factor& f) { return f.label == p; });
}

}  // namespace

PureState::PureState(Factors factors, ComplexVector amplitudes)
    : factors_(std::move(factors)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != checked_total_dim(factors_)) {
    throw DimensionError("PureState: amplitude count does not match factor dims");
  }
  if (!amplitudes_.allFinite()) throw ValidationError("PureState: non-finite amplitude");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
    throw ValidationError("PureState: amplitudes are not normalized");
  }
}

bool PureState::has(Party p) const { return contains(factors_, p); }

Eigen::Index PureState::dim_of(Party p) const {
  for (const auto& f : factors_) {
    if (f.label == p) return f.dim;
  }
  throw ValidationError("PureState has no party " + party_name(p));
}

DensityMatrix::DensityMatrix(Factors factors, ComplexMatrix matrix, Trusted)
    : factors_(std::move(factors)), matrix_(std::move(matrix)) {
  const auto n = checked_total_dim(factors_);
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DimensionError("DensityMatrix: matrix size does not match factor dims");
  }
  if (!matrix_.allFinite()) throw InvalidDensity("DensityMatrix: non-finite entry");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTol) {
    throw InvalidDensity("DensityMatrix: not Hermitian");
  }
  if (std::abs(matrix_.trace() - cd(1.0)) > kTraceTol) {
    throw InvalidDensity("DensityMatrix: trace is not 1");
  }
}

DensityMatrix::DensityMatrix(Factors factors, ComplexMatrix matrix)
    : DensityMatrix(std::move(factors), std::move(matrix), Trusted{}) {
  const auto evals = hermitian_eigenvalues(matrix_);
  if (evals(0) < -kNegativeEigenTol) {
    throw InvalidDensity("DensityMatrix: negative eigenvalue " + std::to_string(evals(0)));
  }
}

DensityMatrix DensityMatrix::trusted(Factors factors, ComplexMatrix matrix) {
  return DensityMatrix(std::move(factors), std::move(matrix), Trusted{});
}

DensityMatrix DensityMatrix::on_reference(ComplexMatrix matrix) {
  const auto n = matrix.rows();
  return DensityMatrix({{Party::R, n}}, std::move(matrix));
}

bool DensityMatrix::has(Party p) const { return contains(factors_, p); }

}  // namespace triptych
