#include "triptych/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace triptych {

using Index = Eigen::Index;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::array<Index, 4> dims_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw ParseError("tensor.dims must be an array of four integers");
  std::array<Index, 4> dims{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (!j[k].is_number_integer()) throw ParseError("tensor.dims must be integers");
    dims[k] = j[k].get<Index>();
    if (dims[k] <= 0) throw ParseError("tensor.dims must be positive");
  }
  return dims;
}

Permutation permutation_from(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("scheme is missing '") + key + "'");
  try {
    return j.at(key).get<Permutation>();
  } catch (const json::exception&) {
    throw ParseError(std::string("'") + key + "' must be an array of integers");
  }
}

Index integer_from(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ParseError(std::string("scheme needs integer '") + key + "'");
  }
  return j.at(key).get<Index>();
}

json legs_json(const std::array<double, 3>& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

json tensor_to_json(const Tensor4cd& t) {
  const auto& c = t.coeffs();
  std::vector<double> re(static_cast<std::size_t>(c.size())), im(static_cast<std::size_t>(c.size()));
  for (Index k = 0; k < c.size(); ++k) {
    re[static_cast<std::size_t>(k)] = c(k).real();
    im[static_cast<std::size_t>(k)] = c(k).imag();
  }
  const auto& d = t.dims();
  return {{"dims", {d[0], d[1], d[2], d[3]}}, {"re", re}, {"im", im}};
}

Tensor4cd tensor_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("re") || !j.contains("im")) {
    throw ParseError("tensor JSON needs 'dims', 're' and 'im'");
  }
  const auto dims = dims_from(j.at("dims"));
  std::vector<double> re, im;
  try {
    re = j.at("re").get<std::vector<double>>();
    im = j.at("im").get<std::vector<double>>();
  } catch (const json::exception&) {
    throw ParseError("tensor 're'/'im' must be arrays of numbers");
  }
  const auto n = static_cast<std::size_t>(dims[0] * dims[1] * dims[2] * dims[3]);
  if (re.size() != n || im.size() != n) throw ParseError("tensor 're'/'im' length does not match dims");
  Tensor4cd::Coeffs c(static_cast<Index>(n));
  for (std::size_t k = 0; k < n; ++k) c(static_cast<Index>(k)) = cd(re[k], im[k]);
  try {
    return Tensor4cd(dims, std::move(c));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json rr = json::array(), ii = json::array();
    for (Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ii.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json& j) {
  try {
    const auto re = j.at("re").get<std::vector<std::vector<double>>>();
    const auto im = j.contains("im") ? j.at("im").get<std::vector<std::vector<double>>>()
                                     : std::vector<std::vector<double>>(re.size(), std::vector<double>(re.size(), 0.0));
    const auto rows = static_cast<Index>(re.size());
    if (rows == 0 || im.size() != re.size()) throw ParseError("matrix JSON: inconsistent rows");
    const auto cols = static_cast<Index>(re[0].size());
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (static_cast<Index>(re[ui].size()) != cols || static_cast<Index>(im[ui].size()) != cols) {
        throw ParseError("matrix JSON: ragged rows");
      }
      for (Index k = 0; k < cols; ++k) m(i, k) = cd(re[ui][static_cast<std::size_t>(k)], im[ui][static_cast<std::size_t>(k)]);
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  }
}

Tensor4cd build_tensor(const SchemeSpec& spec) {
  if (spec.kind == "shift") return shift_code(spec.d, spec.k1, spec.k2);
  if (spec.kind == "vip") return vip_code(spec.d);
  if (spec.kind == "permutation") return permutation_code(spec.d, spec.sigma1, spec.sigma2, spec.sigma3);
  if (spec.kind == "raw") {
    if (!spec.tensor) throw ValidationError("raw scheme needs a tensor");
    return *spec.tensor;
  }
  throw ValidationError("unknown scheme kind '" + spec.kind + "'");
}

json scheme_to_json(const SchemeSpec& spec, const Tensor4cd& t) {
  json j{{"kind", spec.kind}};
  if (spec.kind != "raw") j["d"] = spec.d;
  if (spec.kind == "shift") {
    j["k1"] = spec.k1;
    j["k2"] = spec.k2;
  } else if (spec.kind == "permutation") {
    j["sigma1"] = spec.sigma1;
    j["sigma2"] = spec.sigma2;
    j["sigma3"] = spec.sigma3;
  }
  j["tensor"] = tensor_to_json(t);
  return j;
}

SchemeSpec scheme_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ParseError("scheme JSON needs a string 'kind'");
  }
  SchemeSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  if (j.contains("tensor")) spec.tensor = tensor_from_json(j.at("tensor"));
  if (spec.kind == "raw") {
    if (!spec.tensor) throw ParseError("raw scheme needs 'tensor'");
    return spec;
  }
  if (spec.kind != "shift" && spec.kind != "vip" && spec.kind != "permutation") {
    throw ParseError("unknown scheme kind '" + spec.kind + "'");
  }
  spec.d = integer_from(j, "d");
  if (spec.kind == "shift") {
    spec.k1 = integer_from(j, "k1");
    spec.k2 = integer_from(j, "k2");
  } else if (spec.kind == "permutation") {
    spec.sigma1 = permutation_from(j, "sigma1");
    spec.sigma2 = permutation_from(j, "sigma2");
    spec.sigma3 = permutation_from(j, "sigma3");
  }
  return spec;
}

Tensor4cd tensor_from_scheme(const json& j) {
  const SchemeSpec spec = scheme_from_json(j);
  if (spec.kind == "raw") return *spec.tensor;
  Tensor4cd built = build_tensor(spec);
  if (spec.tensor) {
    if (spec.tensor->dims() != built.dims() ||
        (spec.tensor->coeffs() - built.coeffs()).cwiseAbs().maxCoeff() > 1e-12) {
      throw ParseError("embedded tensor does not match the '" + spec.kind + "' constructor");
    }
  }
  return built;
}

json to_json(const UnitarityResidual& r) { return {{"deviation", r.deviation}, {"is_unitary", r.is_unitary}}; }

json to_json(const MultiUnitarityReport& r) {
  return {{"legs", {to_json(r.legs[0]), to_json(r.legs[1]), to_json(r.legs[2])}},
          {"norms", legs_json(r.norms)},
          {"square", r.square},
          {"all_unitary", r.all_unitary()}};
}

json to_json(const SchemeReport& r) {
  json recovery = json::array();
  for (Leg leg : kAllLegs) {
    const auto& route = r.recovery[leg_index(leg)];
    recovery.push_back({{"erased", leg_name(leg)},
                        {"feasible", route.feasible},
                        {"unitarity_deviation", route.unitarity_deviation},
                        {"worst_fidelity", optional_number(route.worst_fidelity)},
                        {"ancilla_spread", optional_number(route.ancilla_spread)}});
  }
  return {{"verdict", verdict_name(r.verdict)},
          {"base", base_name(r.base)},
          {"uniform", r.uniform},
          {"secrets_tested", r.secrets_tested},
          {"i3_minimal", r.i3_minimal},
          {"i3_value", r.i3_value},
          {"s_r", r.s_r},
          {"i3_residual", r.i3_residual},
          {"mutual_information_r_pa", legs_json(r.mi_r_pa)},
          {"multiunitary", to_json(r.multiunitary)},
          {"recovery", recovery},
          {"marginals_maximally_mixed", legs_json(r.marginal_mixedness)},
          {"marginal_independence_residual", r.marginal_independence_residual},
          {"per_secret_i3_residual", r.per_secret_i3_residual},
          {"routes", {{"i3", r.route_i3}, {"recovery", r.route_recovery}, {"multiunitary", r.route_multiunitary}}},
          {"internal_inconsistency", r.internal_inconsistency},
          {"inconsistency_detail", r.inconsistency_detail}};
}

json to_json(const BoundCheck& b) {
  return {{"base", base_name(b.base)},        {"lower", b.lower},
          {"value", b.value},                  {"upper", b.upper},
          {"slack_low", b.slack_low},          {"slack_high", b.slack_high},
          {"mutual_information_r_pa", legs_json(b.mi_r_pa)},
          {"mutual_information_budget", legs_json(b.mi_budget)},
          {"holds", b.holds}};
}

json to_json(const CoalitionTable& t) {
  json pairs = json::array(), singles = json::array();
  for (const auto& row : t.pairs) {
    json members = json::array();
    for (Leg leg : kAllLegs) {
      if (leg != row.erased) members.push_back(leg_name(leg));
    }
    pairs.push_back({{"pair", members},
                     {"erased", leg_name(row.erased)},
                     {"feasible", row.feasible},
                     {"unitarity_deviation", row.unitarity_deviation},
                     {"worst_fidelity", optional_number(row.worst_fidelity)}});
  }
  for (const auto& row : t.singletons) {
    singles.push_back({{"party", leg_name(row.party)},
                       {"mutual_information_r", row.mi_r},
                       {"cannot_recover_alone", row.cannot_recover}});
  }
  return {{"base", base_name(t.base)},
          {"pairs", pairs},
          {"singletons", singles},
          {"mutual_information_r_all", t.mi_r_all},
          {"vip", t.vip ? json(leg_name(*t.vip)) : json(nullptr)}};
}

json to_json(const MonogamyProbe& p) {
  return {{"base", base_name(p.base)}, {"samples", p.samples},  {"seed", p.seed},
          {"max_i3", p.max_i3},        {"min_i3", p.min_i3},    {"argmax_secret", matrix_to_json(p.argmax_secret)}};
}

json to_json(const RecoveryResult& r) {
  return {{"status", "recovered"},
          {"fidelity", r.fidelity},
          {"unitarity_deviation", r.unitarity_deviation},
          {"recovered_secret", matrix_to_json(r.recovered_secret.matrix())},
          {"ancilla_state", matrix_to_json(r.ancilla_state.matrix())}};
}

json to_json(const Quantiles& q) {
  return {{"min", q.min}, {"q05", q.q05}, {"q25", q.q25}, {"median", q.median},
          {"q75", q.q75}, {"q95", q.q95}, {"max", q.max}};
}

json to_json(const SweepSummary& s) {
  return {{"d", s.d},
          {"trials", s.trials},
          {"secrets_per_trial", s.secrets_per_trial},
          {"base", "nats"},
          {"norm_quantiles",
           {{"norm_t", to_json(s.norm_quantiles[0])},
            {"norm_r", to_json(s.norm_quantiles[1])},
            {"norm_g", to_json(s.norm_quantiles[2])}}},
          {"i3_worst_quantiles", to_json(s.i3_worst_quantiles)},
          {"mu", s.mu},
          {"bound_nats", s.bound_nats},
          {"violation_count", s.violation_count},
          {"delta", s.delta},
          {"norm_bound", s.norm_bound},
          {"norm_violation_count", s.norm_violation_count},
          {"delta_from_mu", s.delta_from_mu},
          {"norm_bound_from_mu", s.norm_bound_from_mu},
          {"norm_violation_count_from_mu", s.norm_violation_count_from_mu},
          {"sandwich_violation_count", s.sandwich_violation_count},
          {"min_sandwich_gap", s.min_sandwich_gap}};
}

json to_json(const RatioStatistics& s) {
  return {{"n", s.n},
          {"trials", s.trials},
          {"seminorm", seminorm_name(s.seminorm)},
          {"p", 1},
          {"mean_g", s.mean_g},
          {"stderr_g", s.stderr_g},
          {"mean_u", s.mean_u},
          {"stderr_u", s.stderr_u},
          {"ratio", s.ratio},
          {"ratio_interval", {s.ratio_low, s.ratio_high}},
          {"bracket", {s.lower_bound, s.upper_bound}},
          {"within_bounds", s.within_bounds}};
}

std::string trial_csv_row(const TrialRecord& rec, bool with_timing) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%llu,%lld,%.17g,%.17g,%.17g,%.17g,%.6f",
                static_cast<unsigned long long>(rec.seed), static_cast<long long>(rec.d), rec.norms[0],
                rec.norms[1], rec.norms[2], rec.i3_worst, with_timing ? rec.elapsed : 0.0);
  return buf;
}

}  // namespace triptych
