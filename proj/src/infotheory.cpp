#include "triptych/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace triptych {

std::string base_name(LogBase base) { return base == LogBase::Bits ? "bits" : "nats"; }

LogBase parse_base(const std::string& name) {
  if (name == "bits") return LogBase::Bits;
  if (name == "nats") return LogBase::Nats;
  throw ValidationError("unknown log base '" + name + "' (expected bits or nats)");
}

namespace {

double log_in(double x, LogBase base) { return base == LogBase::Bits ? std::log2(x) : std::log(x); }

// Index bookkeeping for splitting a product space into kept and traced parts.
struct Split {
  Factors kept;  // sorted by label
  Eigen::Index kept_dim = 1;
  Eigen::Index traced_dim = 1;
  std::vector<Eigen::Index> kept_index;    // per flat index
  std::vector<Eigen::Index> traced_index;  // per flat index
};

Split make_split(const Factors& factors, const PartySet& keep) {
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  const auto total = checked_total_dim(factors);
  const auto n = factors.size();

  std::vector<bool> is_kept(n, false);
  for (Party p : keep) {
    auto it = std::find_if(factors.begin(), factors.end(), [p](const Factor& f) { return f.label == p; });
    if (it == factors.end()) {
      throw ValidationError("partial_trace: unknown party label " + party_name(p));
    }
    const auto pos = static_cast<std::size_t>(it - factors.begin());
    if (is_kept[pos]) throw ValidationError("partial_trace: duplicate label " + party_name(p));
    is_kept[pos] = true;
  }

  // Kept positions in global label order; traced positions in storage order.
  std::vector<std::size_t> kept_pos, traced_pos;
  for (std::size_t k = 0; k < n; ++k) (is_kept[k] ? kept_pos : traced_pos).push_back(k);
  std::sort(kept_pos.begin(), kept_pos.end(), [&](std::size_t a, std::size_t b) {
    return static_cast<int>(factors[a].label) < static_cast<int>(factors[b].label);
  });

  Split s;
  for (auto k : kept_pos) {
    s.kept.push_back(factors[k]);
    s.kept_dim *= factors[k].dim;
  }
  for (auto k : traced_pos) s.traced_dim *= factors[k].dim;

  s.kept_index.resize(static_cast<std::size_t>(total));
  s.traced_index.resize(static_cast<std::size_t>(total));
  std::vector<Eigen::Index> digits(n, 0);
  for (Eigen::Index x = 0; x < total; ++x) {
    Eigen::Index ki = 0, ti = 0;
    for (auto k : kept_pos) ki = ki * factors[k].dim + digits[k];
    for (auto k : traced_pos) ti = ti * factors[k].dim + digits[k];
    s.kept_index[static_cast<std::size_t>(x)] = ki;
    s.traced_index[static_cast<std::size_t>(x)] = ti;
    // Increment the mixed-radix counter, last factor fastest.
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < factors[k].dim) break;
      digits[k] = 0;
    }
  }
  return s;
}

// Coefficient matrix psi(kept, traced) of a pure state.
ComplexMatrix coefficient_matrix(const PureState& state, const Split& s) {
  ComplexMatrix m(s.kept_dim, s.traced_dim);
  const auto& amp = state.amplitudes();
  for (Eigen::Index x = 0; x < amp.size(); ++x) {
    const auto ux = static_cast<std::size_t>(x);
    m(s.kept_index[ux], s.traced_index[ux]) = amp(x);
  }
  return m;
}

void require_disjoint(const PartySet& a, const PartySet& b) {
  for (Party p : a) {
    if (std::find(b.begin(), b.end(), p) != b.end()) {
      throw ValidationError("mutual_information: label sets overlap on " + party_name(p));
    }
  }
  if (a.empty() || b.empty()) throw ValidationError("mutual_information: empty label set");
}

PartySet join(const PartySet& a, const PartySet& b) {
  PartySet ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  return ab;
}

double clip_mutual(double value) {
  if (value < 0.0 && value >= -kNegativeEigenTol) return 0.0;
  return value;
}

void require_tripartite(const Factors& factors, bool allow_reference) {
  for (Party p : {Party::P1, Party::P2, Party::P3}) {
    if (std::none_of(factors.begin(), factors.end(), [p](const Factor& f) { return f.label == p; })) {
      throw ValidationError("tripartite_information: missing party " + party_name(p));
    }
  }
  for (const auto& f : factors) {
    if (f.label == Party::Ancilla || (!allow_reference && f.label == Party::R)) {
      throw ValidationError("tripartite_information: unexpected party " + party_name(f.label));
    }
  }
}

double seven_entropy_sum(const std::array<double, 7>& s) {
  return s[0] + s[1] + s[2] - s[3] - s[4] - s[5] + s[6];
}

const std::array<PartySet, 7>& seven_subsets() {
  static const std::array<PartySet, 7> subsets{
      PartySet{Party::P1},           PartySet{Party::P2},           PartySet{Party::P3},
      PartySet{Party::P1, Party::P2}, PartySet{Party::P1, Party::P3}, PartySet{Party::P2, Party::P3},
      PartySet{Party::P1, Party::P2, Party::P3}};
  return subsets;
}

struct SupportSplit {
  ComplexMatrix support;  // eigenvectors with eigenvalue > kEigenClip
  RealVector support_evals;
  double outside_weight = 0.0;
};

SupportSplit split_support(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative entropy: size mismatch");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sigma.matrix());
  const auto& evals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  std::vector<Eigen::Index> keep, drop;
  for (Eigen::Index k = 0; k < evals.size(); ++k) (evals(k) > kEigenClip ? keep : drop).push_back(k);
  SupportSplit out;
  out.support = vecs(Eigen::all, keep);
  out.support_evals = evals(keep);
  if (!drop.empty()) {
    const ComplexMatrix kernel = vecs(Eigen::all, drop);
    out.outside_weight = (kernel.adjoint() * rho.matrix() * kernel).trace().real();
  }
  return out;
}

}  // namespace

DensityMatrix partial_trace(const PureState& state, const PartySet& keep) {
  const Split s = make_split(state.factors(), keep);
  const ComplexMatrix m = coefficient_matrix(state, s);
  ComplexMatrix rho = m * m.adjoint();
  return DensityMatrix::trusted(s.kept, std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const PartySet& keep) {
  const Split s = make_split(rho.factors(), keep);
  // positions[t][k] = flat index with traced part t and kept part k
  std::vector<std::vector<Eigen::Index>> positions(static_cast<std::size_t>(s.traced_dim),
                                                   std::vector<Eigen::Index>(s.kept_dim));
  for (Eigen::Index x = 0; x < rho.dim(); ++x) {
    const auto ux = static_cast<std::size_t>(x);
    positions[static_cast<std::size_t>(s.traced_index[ux])][s.kept_index[ux]] = x;
  }
  ComplexMatrix reduced = ComplexMatrix::Zero(s.kept_dim, s.kept_dim);
  for (const auto& idx : positions) reduced += rho.matrix()(idx, idx);
  return DensityMatrix::trusted(s.kept, std::move(reduced));
}

double entropy_of_spectrum(const RealVector& evals, LogBase base) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    const double lambda = evals(k);
    if (lambda < -kNegativeEigenTol) {
      throw InvalidDensity("entropy: eigenvalue " + std::to_string(lambda) + " below -1e-9");
    }
    if (lambda > kEigenClip) s -= lambda * log_in(lambda, base);
  }
  return s;
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
  return {entropy_of_spectrum(hermitian_eigenvalues(rho.matrix()), base), base};
}

EntropyValue subsystem_entropy(const PureState& state, const PartySet& subset, LogBase base) {
  const Split s = make_split(state.factors(), subset);
  if (s.traced_dim == 1) return {0.0, base};
  const ComplexMatrix m = coefficient_matrix(state, s);
  const ComplexMatrix gram = s.kept_dim <= s.traced_dim ? ComplexMatrix(m * m.adjoint())
                                                         : ComplexMatrix(m.adjoint() * m);
  return {entropy_of_spectrum(hermitian_eigenvalues(gram), base), base};
}

EntropyValue mutual_information(const DensityMatrix& rho, const PartySet& a, const PartySet& b,
                                LogBase base) {
  require_disjoint(a, b);
  const double sa = von_neumann_entropy(partial_trace(rho, a), base).value;
  const double sb = von_neumann_entropy(partial_trace(rho, b), base).value;
  const double sab = von_neumann_entropy(partial_trace(rho, join(a, b)), base).value;
  return {clip_mutual(sa + sb - sab), base};
}

EntropyValue mutual_information(const PureState& state, const PartySet& a, const PartySet& b,
                                LogBase base) {
  require_disjoint(a, b);
  const double sa = subsystem_entropy(state, a, base).value;
  const double sb = subsystem_entropy(state, b, base).value;
  const double sab = subsystem_entropy(state, join(a, b), base).value;
  return {clip_mutual(sa + sb - sab), base};
}

TripartiteInfo tripartite_information(const PureState& state, LogBase base) {
  require_tripartite(state.factors(), true);
  TripartiteInfo info;
  info.base = base;
  const auto& subsets = seven_subsets();
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    info.entropies[k] = subsystem_entropy(state, subsets[k], base).value;
  }
  info.value = seven_entropy_sum(info.entropies);

  if (state.has(Party::R)) {
    info.s_r = subsystem_entropy(state, {Party::R}, base).value;
    double via = -2.0 * info.s_r;
    const std::array<Party, 3> parties{Party::P1, Party::P2, Party::P3};
    for (std::size_t a = 0; a < 3; ++a) {
      // S(R P_a) from the reduced state on R P_a itself, not from its complement.
      const double s_rpa = von_neumann_entropy(partial_trace(state, {Party::R, parties[a]}), base).value;
      info.mi_r_pa[a] = clip_mutual(info.s_r + info.entropies[a] - s_rpa);
      via += info.mi_r_pa[a];
    }
    info.via_reference = via;
    if (std::abs(via - info.value) > kI3FormTol) {
      throw InternalInconsistency("tripartite_information: forms disagree (" +
                                  std::to_string(info.value) + " vs " + std::to_string(via) + ")");
    }
  }
  return info;
}

TripartiteInfo tripartite_information(const DensityMatrix& rho, LogBase base) {
  require_tripartite(rho.factors(), false);
  TripartiteInfo info;
  info.base = base;
  const auto& subsets = seven_subsets();
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    info.entropies[k] = von_neumann_entropy(partial_trace(rho, subsets[k]), base).value;
  }
  info.value = seven_entropy_sum(info.entropies);
  return info;
}

EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, LogBase base) {
  const SupportSplit split = split_support(rho, sigma);
  if (split.outside_weight >= kNegativeEigenTol) {
    return {std::numeric_limits<double>::infinity(), base};
  }
  const auto rho_evals = hermitian_eigenvalues(rho.matrix());
  double value = -entropy_of_spectrum(rho_evals, base);
  for (Eigen::Index k = 0; k < split.support_evals.size(); ++k) {
    const auto v = split.support.col(k);
    const double weight = (v.adjoint() * rho.matrix() * v).value().real();
    value -= weight * log_in(split.support_evals(k), base);
  }
  return {clip_mutual(value), base};
}

EntropyValue max_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, LogBase base) {
  const SupportSplit split = split_support(rho, sigma);
  if (split.outside_weight >= kNegativeEigenTol) {
    return {std::numeric_limits<double>::infinity(), base};
  }
  const RealVector inv_sqrt = split.support_evals.cwiseSqrt().cwiseInverse();
  const ComplexMatrix whiten = split.support * inv_sqrt.asDiagonal();
  const ComplexMatrix x = whiten.adjoint() * rho.matrix() * whiten;
  const auto evals = hermitian_eigenvalues(x);
  const double top = evals(evals.size() - 1);
  if (top <= 0.0) return {-std::numeric_limits<double>::infinity(), base};
  return {log_in(top, base), base};
}

}  // namespace triptych
