#pragma once

// Certification of ((2,3)) threshold schemes through three independent routes
// (minimal I3, recovery simulation, multi-unitarity), the I3 sandwich bound,
// and audits of imperfect schemes.

#include <cstdint>
#include <optional>
#include <string>

#include "triptych/codespace.hpp"

namespace triptych {

/// Linear-algebra residuals vs entropy identities; each layer adds one eigensolve of error.
struct Tolerances {
  double linear = 1e-9;
  double entropy = 1e-8;
};

enum class Verdict { Perfect, Imperfect, Invalid };
std::string verdict_name(Verdict v);

struct RecoveryRoute {
  bool feasible = false;  // uniform dims: U_a unitary; otherwise I(R,P_a) = 0
  double unitarity_deviation = 0.0;
  std::optional<double> worst_fidelity;          // over sampled secrets, when feasible
  std::optional<double> ancilla_spread;          // max distance between ancilla states
};

struct SchemeReport {
  LogBase base = LogBase::Bits;
  bool uniform = true;
  int secrets_tested = 0;

  // Route (i): I3 of the uniform purification against -2S(R).
  double i3_value = 0.0;
  double s_r = 0.0;
  double i3_residual = 0.0;  // |I3 + 2S(R)|
  bool i3_minimal = false;
  std::array<double, 3> mi_r_pa{};

  // Route (ii): multi-unitarity.
  MultiUnitarityReport multiunitary;

  // Route (iii): recovery of every sampled secret after each erasure.
  std::array<RecoveryRoute, 3> recovery;

  // Single-party marginals of encoded secrets.
  std::array<double, 3> marginal_mixedness{};  // max ||rho^{P_a} - 1/d_a||
  double marginal_independence_residual = 0.0;

  // I3 = -2S(rho) for every sampled secret.
  double per_secret_i3_residual = 0.0;

  bool route_i3 = false;
  bool route_recovery = false;
  bool route_multiunitary = false;
  bool internal_inconsistency = false;
  std::string inconsistency_detail;
  Verdict verdict = Verdict::Invalid;
};

/// Secrets used by the sampling routines: n Hilbert-Schmidt densities drawn from
/// substreams (seed, k), then 1/r and the pure basis secrets.
std::vector<ComplexMatrix> certification_secrets(Eigen::Index r, int n_random, std::uint64_t seed);

SchemeReport certify(const CodeSpace& cs, int n_secrets, std::uint64_t seed, Tolerances tol = {},
                     LogBase base = LogBase::Bits);

struct BoundCheck {
  LogBase base = LogBase::Bits;
  double lower = 0.0;  // -2S(R)
  double value = 0.0;  // I3
  double upper = 0.0;  // -2S(R) + 2 sum_a log||fold(t,a)||
  double slack_low = 0.0;
  double slack_high = 0.0;
  std::array<double, 3> mi_r_pa{};       // I(R,P_a)
  std::array<double, 3> mi_budget{};     // 2 log||fold(t,a)||
  bool holds = false;                    // all slacks >= -1e-8
};

/// Uniform dims required.
BoundCheck bound_check(const CodeSpace& cs, const DensityMatrix& secret, LogBase base = LogBase::Bits);

struct CoalitionRow {
  Leg erased;  // the pair is the other two parties
  bool feasible = false;
  double unitarity_deviation = 0.0;
  std::optional<double> worst_fidelity;
};

struct SingletonRow {
  Leg party;
  double mi_r = 0.0;           // I(R,P_a) on the uniform purification
  bool cannot_recover = false;  // I(R,P_a) < I(R,P1P2P3)
};

struct CoalitionTable {
  LogBase base = LogBase::Bits;
  std::array<CoalitionRow, 3> pairs;
  std::array<SingletonRow, 3> singletons;
  double mi_r_all = 0.0;  // I(R, P1P2P3) = 2 S(R)
  /// Party contained in every feasible pair, when exactly two pairs are feasible.
  std::optional<Leg> vip;
};

CoalitionTable vip_audit(const CodeSpace& cs, int n_secrets, std::uint64_t seed,
                         LogBase base = LogBase::Bits, double tol = kDefaultUnitarityTol);

struct MonogamyProbe {
  LogBase base = LogBase::Bits;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_i3 = 0.0;
  double min_i3 = 0.0;
  ComplexMatrix argmax_secret;
};

/// Largest I3 over Hilbert-Schmidt secrets, random pure secrets and the extremes.
/// Evidence only.
MonogamyProbe monogamy_probe(const CodeSpace& cs, int n_secrets, std::uint64_t seed,
                             LogBase base = LogBase::Bits);

}  // namespace triptych
