#include "triptych/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "triptych/random_lab.hpp"

namespace triptych {

using Index = Eigen::Index;

namespace {

constexpr std::array<Party, 3> kParties{Party::P1, Party::P2, Party::P3};

double distance(const ComplexMatrix& a, const ComplexMatrix& b) { return operator_norm(a - b); }

double max_pairwise_distance(const std::vector<ComplexMatrix>& states) {
  double worst = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k)
    for (std::size_t l = k + 1; l < states.size(); ++l) worst = std::max(worst, distance(states[k], states[l]));
  return worst;
}

double log_in(double x, LogBase base) { return base == LogBase::Bits ? std::log2(x) : std::log(x); }

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Perfect: return "perfect";
    case Verdict::Imperfect: return "imperfect";
    case Verdict::Invalid: return "invalid";
  }
  return "?";
}

std::vector<ComplexMatrix> certification_secrets(Index r, int n_random, std::uint64_t seed) {
  std::vector<ComplexMatrix> secrets;
  for (int k = 0; k < n_random; ++k) {
    Philox4x32 rng(seed, static_cast<std::uint64_t>(k));
    secrets.push_back(hilbert_schmidt_density(r, rng));
  }
  Philox4x32 unused(seed);
  auto extremes = sample_secrets(r, 0, unused);
  secrets.insert(secrets.end(), extremes.begin(), extremes.end());
  return secrets;
}

SchemeReport certify(const CodeSpace& cs, int n_secrets, std::uint64_t seed, Tolerances tol, LogBase base) {
  SchemeReport rep;
  rep.base = base;
  rep.uniform = cs.is_uniform();

  const auto uniform_info = tripartite_information(uniform_purification(cs), base);
  rep.i3_value = uniform_info.value;
  rep.s_r = uniform_info.s_r;
  rep.i3_residual = std::abs(uniform_info.value + 2.0 * uniform_info.s_r);
  rep.i3_minimal = rep.i3_residual <= tol.entropy;
  rep.mi_r_pa = uniform_info.mi_r_pa;

  rep.multiunitary = multiunitarity_report(cs.tensor(), tol.linear);

  const auto raw_secrets = certification_secrets(cs.r(), n_secrets, seed);
  std::vector<DensityMatrix> secrets;
  secrets.reserve(raw_secrets.size());
  for (const auto& m : raw_secrets) secrets.push_back(validated_secret(m, cs.r()));
  rep.secrets_tested = static_cast<int>(secrets.size());

  std::array<std::vector<ComplexMatrix>, 3> marginals;
  for (const auto& secret : secrets) {
    const PureState phi = purify(cs, secret);
    const auto info = tripartite_information(phi, base);
    rep.per_secret_i3_residual = std::max(rep.per_secret_i3_residual, std::abs(info.value + 2.0 * info.s_r));
    for (int a = 0; a < 3; ++a) {
      ComplexMatrix m = partial_trace(phi, {kParties[a]}).matrix();
      const Index da = m.rows();
      rep.marginal_mixedness[a] = std::max(
          rep.marginal_mixedness[a], distance(m, ComplexMatrix::Identity(da, da) / static_cast<double>(da)));
      marginals[a].push_back(std::move(m));
    }
  }
  for (int a = 0; a < 3; ++a) {
    rep.marginal_independence_residual =
        std::max(rep.marginal_independence_residual, max_pairwise_distance(marginals[a]));
  }

  for (Leg leg : kAllLegs) {
    const int a = leg_index(leg);
    RecoveryRoute& route = rep.recovery[a];
    route.unitarity_deviation = rep.multiunitary.legs[a].deviation;
    if (!rep.uniform) {
      route.feasible = rep.mi_r_pa[a] <= tol.entropy;
      continue;
    }
    route.feasible = rep.multiunitary.legs[a].is_unitary;
    if (!route.feasible) continue;
    double worst = 1.0;
    std::vector<ComplexMatrix> ancillas;
    for (const auto& secret : secrets) {
      const auto result = recover(cs, secret, leg, tol.linear);
      worst = std::min(worst, result.fidelity);
      ancillas.push_back(result.ancilla_state.matrix());
    }
    route.worst_fidelity = worst;
    route.ancilla_spread = max_pairwise_distance(ancillas);
  }

  const int feasible = static_cast<int>(std::count_if(rep.recovery.begin(), rep.recovery.end(),
                                                      [](const RecoveryRoute& r) { return r.feasible; }));
  rep.route_i3 = rep.i3_minimal;
  rep.route_multiunitary = rep.multiunitary.all_unitary();
  rep.route_recovery = feasible == 3;
  if (rep.uniform) {
    for (const auto& r : rep.recovery) {
      if (!r.feasible) continue;
      if (*r.worst_fidelity < 1.0 - tol.linear || *r.ancilla_spread > tol.linear) rep.route_recovery = false;
    }
  }

  const bool side_checks = rep.per_secret_i3_residual <= tol.entropy &&
                           rep.marginal_independence_residual <= tol.linear &&
                           (!rep.uniform || *std::max_element(rep.marginal_mixedness.begin(),
                                                              rep.marginal_mixedness.end()) <= tol.linear);
  bool perfect = false;
  if (rep.uniform) {
    if (rep.route_i3 != rep.route_recovery || rep.route_i3 != rep.route_multiunitary) {
      rep.internal_inconsistency = true;
      rep.inconsistency_detail = "certification routes disagree";
    }
    perfect = rep.route_i3 && rep.route_recovery && rep.route_multiunitary;
  } else {
    if (rep.route_i3 != rep.route_recovery) {
      rep.internal_inconsistency = true;
      rep.inconsistency_detail = "I3 minimality disagrees with per-party mutual information";
    }
    perfect = rep.route_i3 && rep.route_recovery;
  }
  if (perfect && !side_checks) {
    rep.internal_inconsistency = true;
    rep.inconsistency_detail = "routes certify but per-secret or marginal checks fail";
    perfect = false;
  }

  if (perfect) {
    rep.verdict = Verdict::Perfect;
  } else if (feasible == 0) {
    rep.verdict = Verdict::Invalid;
  } else {
    rep.verdict = Verdict::Imperfect;
  }
  return rep;
}

BoundCheck bound_check(const CodeSpace& cs, const DensityMatrix& secret, LogBase base) {
  if (!cs.is_uniform()) throw ValidationError("bound_check: uniform party dimensions required");
  const auto info = tripartite_information(purify(cs, secret), base);
  BoundCheck bc;
  bc.base = base;
  bc.lower = -2.0 * info.s_r;
  bc.value = info.value;
  bc.mi_r_pa = info.mi_r_pa;
  double budget = 0.0;
  for (Leg leg : kAllLegs) {
    const int a = leg_index(leg);
    bc.mi_budget[a] = 2.0 * log_in(operator_norm(fold(cs.tensor(), leg)), base);
    budget += bc.mi_budget[a];
  }
  bc.upper = bc.lower + budget;
  bc.slack_low = bc.value - bc.lower;
  bc.slack_high = bc.upper - bc.value;
  bc.holds = bc.slack_low >= -kI3FormTol && bc.slack_high >= -kI3FormTol;
  for (int a = 0; a < 3; ++a) {
    if (bc.mi_r_pa[a] > bc.mi_budget[a] + kI3FormTol) bc.holds = false;
  }
  return bc;
}

CoalitionTable vip_audit(const CodeSpace& cs, int n_secrets, std::uint64_t seed, LogBase base, double tol) {
  if (!cs.is_uniform()) throw ValidationError("vip_audit: uniform party dimensions required");
  CoalitionTable table;
  table.base = base;

  const auto raw_secrets = certification_secrets(cs.r(), n_secrets, seed);
  for (Leg leg : kAllLegs) {
    CoalitionRow& row = table.pairs[leg_index(leg)];
    row.erased = leg;
    const auto res = unitarity(fold(cs.tensor(), leg), tol);
    row.feasible = res.is_unitary;
    row.unitarity_deviation = res.deviation;
    if (!row.feasible) continue;
    double worst = 1.0;
    for (const auto& m : raw_secrets) {
      worst = std::min(worst, recover(cs, validated_secret(m, cs.r()), leg, tol).fidelity);
    }
    row.worst_fidelity = worst;
  }

  const PureState phi = uniform_purification(cs);
  const auto info = tripartite_information(phi, base);
  table.mi_r_all = mutual_information(phi, {Party::R}, {Party::P1, Party::P2, Party::P3}, base).value;
  for (Leg leg : kAllLegs) {
    const int a = leg_index(leg);
    table.singletons[a] = {leg, info.mi_r_pa[a], info.mi_r_pa[a] < table.mi_r_all - kI3FormTol};
  }

  const int feasible = static_cast<int>(std::count_if(table.pairs.begin(), table.pairs.end(),
                                                      [](const CoalitionRow& r) { return r.feasible; }));
  if (feasible == 2) {
    for (const auto& row : table.pairs) {
      if (!row.feasible) table.vip = row.erased;
    }
  }
  return table;
}

MonogamyProbe monogamy_probe(const CodeSpace& cs, int n_secrets, std::uint64_t seed, LogBase base) {
  MonogamyProbe probe;
  probe.base = base;
  probe.seed = seed;
  std::vector<ComplexMatrix> secrets;
  for (int k = 0; k < n_secrets; ++k) {
    Philox4x32 rng(seed, static_cast<std::uint64_t>(k));
    secrets.push_back(k % 2 == 0 ? hilbert_schmidt_density(cs.r(), rng) : random_pure_density(cs.r(), rng));
  }
  Philox4x32 unused(seed);
  for (auto& m : sample_secrets(cs.r(), 0, unused)) secrets.push_back(std::move(m));

  probe.max_i3 = -std::numeric_limits<double>::infinity();
  probe.min_i3 = std::numeric_limits<double>::infinity();
  for (const auto& m : secrets) {
    const double i3 = tripartite_information(purify(cs, m), base).value;
    if (i3 > probe.max_i3) {
      probe.max_i3 = i3;
      probe.argmax_secret = m;
    }
    probe.min_i3 = std::min(probe.min_i3, i3);
  }
  probe.samples = static_cast<int>(secrets.size());
  return probe;
}

}  // namespace triptych
