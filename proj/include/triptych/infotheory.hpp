#pragma once

// Partial traces, von Neumann entropy, mutual information, I3 and relative entropies.

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "triptych/state.hpp"

namespace triptych {

enum class LogBase { Bits, Nats };

std::string base_name(LogBase base);
LogBase parse_base(const std::string& name);

struct EntropyValue {
  double value = 0.0;
  LogBase base = LogBase::Bits;

  bool is_infinite() const { return std::isinf(value); }
};

/// Eigenvalues at or below this are treated as zero in 0 log 0.
inline constexpr double kEigenClip = 1e-12;
/// Tolerated gap between the two algebraic forms of I3.
inline constexpr double kI3FormTol = 1e-8;

using PartySet = std::vector<Party>;

/// Reduced density on `keep`, factors ordered R, P1, P2, P3, Ancilla.
DensityMatrix partial_trace(const PureState& state, const PartySet& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const PartySet& keep);

/// -sum lambda log lambda over the spectrum; throws InvalidDensity below -1e-9.
double entropy_of_spectrum(const RealVector& evals, LogBase base);

EntropyValue von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::Bits);

/// S(subset) of a pure state, computed on whichever side of the cut is smaller.
EntropyValue subsystem_entropy(const PureState& state, const PartySet& subset,
                               LogBase base = LogBase::Bits);

/// I(A,B) = S(A) + S(B) - S(AB); small negative rounding is clipped to 0.
EntropyValue mutual_information(const DensityMatrix& rho, const PartySet& a, const PartySet& b,
                                LogBase base = LogBase::Bits);
EntropyValue mutual_information(const PureState& state, const PartySet& a, const PartySet& b,
                                LogBase base = LogBase::Bits);

struct TripartiteInfo {
  double value = 0.0;  // seven-entropy form
  LogBase base = LogBase::Bits;
  /// S(P1), S(P2), S(P3), S(P1P2), S(P1P3), S(P2P3), S(P1P2P3).
  std::array<double, 7> entropies{};
  /// Present when a purification on R was supplied: -2S(R) + sum_a I(R,P_a).
  std::optional<double> via_reference;
  double s_r = 0.0;
  std::array<double, 3> mi_r_pa{};  // I(R,P1), I(R,P2), I(R,P3)
};

/// I3(P1:P2:P3). For a pure state on R P1 P2 P3 both forms are computed
/// independently and must agree to kI3FormTol (InternalInconsistency otherwise).
TripartiteInfo tripartite_information(const PureState& state, LogBase base = LogBase::Bits);
TripartiteInfo tripartite_information(const DensityMatrix& rho, LogBase base = LogBase::Bits);

/// D(rho||sigma); +infinity when rho has weight >= 1e-9 outside supp(sigma).
EntropyValue relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                              LogBase base = LogBase::Bits);

/// D_inf(rho||sigma) = log lambda_max(sigma^{-1/2} rho sigma^{-1/2}) on supp(sigma).
EntropyValue max_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  LogBase base = LogBase::Bits);

}  // namespace triptych
