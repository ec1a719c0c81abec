#include "triptych/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "triptych/json_io.hpp"

namespace triptych::cli {

namespace {

using Index = Eigen::Index;

struct SchemeArgs {
  std::string scheme_file;
  std::string kind;
  Index d = 0;
  Index k1 = 1;
  Index k2 = 2;
  std::string sigma1, sigma2, sigma3;
};

struct CommonArgs {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string base;
  double tol = kDefaultUnitarityTol;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_scheme_options(CLI::App* cmd, SchemeArgs& a) {
  cmd->add_option("--scheme", a.scheme_file, "Scheme JSON file");
  cmd->add_option("--kind", a.kind, "shift | vip | permutation");
  cmd->add_option("--d", a.d, "Local dimension");
  cmd->add_option("--k1", a.k1, "Shift step for P2 (shift codes)");
  cmd->add_option("--k2", a.k2, "Shift step for P3 (shift codes)");
  cmd->add_option("--sigma1", a.sigma1, "Comma-separated images of sigma1 (permutation codes)");
  cmd->add_option("--sigma2", a.sigma2, "Comma-separated images of sigma2");
  cmd->add_option("--sigma3", a.sigma3, "Comma-separated images of sigma3");
}

void add_common_options(CLI::App* cmd, CommonArgs& c, bool with_tol) {
  cmd->add_option("--seed", c.seed, "RNG seed (default: $TRIPTYCH_SEED or 0)");
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
  cmd->add_option("--base", c.base, "Log base: bits | nats");
  if (with_tol) cmd->add_option("--tol", c.tol, "Unitarity / linear-algebra tolerance");
}

std::uint64_t resolve_seed(const CommonArgs& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("TRIPTYCH_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("TRIPTYCH_SEED is not an unsigned integer: ") + env);
  }
  return 0;
}

LogBase resolve_base(const CommonArgs& c, LogBase fallback) {
  return c.base.empty() ? fallback : parse_base(c.base);
}

Permutation parse_permutation(const std::string& text, const char* name) {
  Permutation p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      p.push_back(static_cast<Index>(std::stoll(item)));
    } catch (const std::exception&) {
      throw UsageError(std::string(name) + ": '" + item + "' is not an integer");
    }
  }
  return p;
}

SchemeSpec spec_from_args(const SchemeArgs& a) {
  if (a.kind.empty()) throw UsageError("need --scheme FILE or --kind");
  SchemeSpec spec;
  spec.kind = a.kind;
  spec.d = a.d;
  spec.k1 = a.k1;
  spec.k2 = a.k2;
  if (a.kind == "permutation") {
    spec.sigma1 = parse_permutation(a.sigma1, "--sigma1");
    spec.sigma2 = parse_permutation(a.sigma2, "--sigma2");
    spec.sigma3 = parse_permutation(a.sigma3, "--sigma3");
  } else if (a.kind != "shift" && a.kind != "vip") {
    throw UsageError("--kind must be shift, vip or permutation");
  }
  return spec;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scheme file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("scheme file '" + path + "' is not valid JSON: " + e.what());
  }
}

CodeSpace load_code_space(const SchemeArgs& a) {
  if (!a.scheme_file.empty()) return CodeSpace::from_tensor(tensor_from_scheme(read_json_file(a.scheme_file)));
  return CodeSpace::from_tensor(build_tensor(spec_from_args(a)));
}

void emit(const std::string& text, const CommonArgs& c, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw UsageError("cannot write '" + c.out + "'");
  file << text;
}

std::string ket(Index s1, Index s2, Index s3, Index d) {
  std::ostringstream os;
  os << '|';
  if (d <= 10) {
    os << s1 << s2 << s3;
  } else {
    os << s1 << ',' << s2 << ',' << s3;
  }
  os << '>';
  return os.str();
}

/// Basis vectors in ket notation, e.g. |1~> = (|012> + |120> + |201>)/sqrt(3).
void print_kets(const CodeSpace& cs, std::ostream& err) {
  const auto& dims = cs.party_dims();
  const auto& basis = cs.basis();
  for (Index i = 0; i < cs.r(); ++i) {
    std::vector<std::pair<Index, cd>> terms;
    for (Index x = 0; x < basis.rows(); ++x) {
      if (std::abs(basis(x, i)) > 1e-12) terms.emplace_back(x, basis(x, i));
    }
    const double uniform_amp = 1.0 / std::sqrt(static_cast<double>(terms.size()));
    const bool equal_weights = std::all_of(terms.begin(), terms.end(), [&](const auto& t) {
      return std::abs(t.second - cd(uniform_amp, 0.0)) < 1e-12;
    });
    err << '|' << i << "~> = ";
    if (equal_weights) err << '(';
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const Index x = terms[k].first;
      const Index s3 = x % dims[3], s2 = (x / dims[3]) % dims[2], s1 = x / (dims[3] * dims[2]);
      if (k > 0) err << " + ";
      if (!equal_weights) {
        const cd c = terms[k].second;
        err << std::setprecision(6) << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
      }
      err << ket(s1, s2, s3, dims[1]);
    }
    if (equal_weights) err << ")/sqrt(" << terms.size() << ')';
    err << '\n';
  }
}

DensityMatrix secret_from_spec(const std::string& spec, Index r, std::uint64_t seed) {
  if (spec == "uniform") return validated_secret(ComplexMatrix::Identity(r, r) / static_cast<double>(r), r);
  if (spec == "random") {
    Philox4x32 rng(seed);
    return validated_secret(hilbert_schmidt_density(r, rng), r);
  }
  if (spec.rfind("basis:", 0) == 0) {
    Index k = -1;
    try {
      k = static_cast<Index>(std::stoll(spec.substr(6)));
    } catch (const std::exception&) {
    }
    if (k < 0 || k >= r) throw UsageError("--secret basis:K needs 0 <= K < " + std::to_string(r));
    ComplexMatrix m = ComplexMatrix::Zero(r, r);
    m(k, k) = 1.0;
    return validated_secret(m, r);
  }
  if (spec.rfind("file:", 0) == 0) {
    return validated_secret(matrix_from_json(read_json_file(spec.substr(5))), r);
  }
  throw UsageError("--secret must be uniform, random, basis:K or file:PATH");
}

Leg parse_leg(const std::string& name) {
  if (name == "P1") return Leg::P1;
  if (name == "P2") return Leg::P2;
  if (name == "P3") return Leg::P3;
  throw UsageError("--erased must be P1, P2 or P3");
}

std::pair<Index, Index> parse_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const auto v = static_cast<Index>(std::stoll(text));
      return {v, v};
    }
    return {static_cast<Index>(std::stoll(text.substr(0, dots))), static_cast<Index>(std::stoll(text.substr(dots + 2)))};
  } catch (const std::exception&) {
    throw UsageError("--d must be an integer or a range like 2..6");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build, certify and stress-test ((2,3)) quantum secret-sharing schemes"};
  app.require_subcommand(1);

  SchemeArgs scheme;
  CommonArgs common;

  auto* build = app.add_subcommand("build", "Write a scheme file from constructor parameters");
  add_scheme_options(build, scheme);
  add_common_options(build, common, false);

  int n_secrets = 10;
  auto* certify_cmd = app.add_subcommand("certify", "Certify the threshold property (exit 0 iff perfect)");
  add_scheme_options(certify_cmd, scheme);
  add_common_options(certify_cmd, common, true);
  certify_cmd->add_option("--secrets", n_secrets, "Random secrets per route");

  std::string secret_spec = "random";
  std::string erased_name;
  auto* recover_cmd = app.add_subcommand("recover", "Simulate erasure of one party and recovery");
  add_scheme_options(recover_cmd, scheme);
  add_common_options(recover_cmd, common, true);
  recover_cmd->add_option("--secret", secret_spec, "uniform | random | basis:K | file:PATH");
  recover_cmd->add_option("--erased", erased_name, "P1 | P2 | P3")->required();

  auto* audit = app.add_subcommand("audit", "Coalition table, monogamy probe and I3 bounds");
  add_scheme_options(audit, scheme);
  add_common_options(audit, common, true);
  audit->add_option("--secrets", n_secrets, "Sampled secrets");

  std::string d_range = "2..6";
  int trials = 100;
  int secrets_per_trial = 20;
  double mu = 3.0;
  double delta = 0.01;
  unsigned threads = 0;
  std::string summary_path;
  bool no_timing = false;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over Haar scrambling unitaries");
  add_common_options(sweep, common, false);
  sweep->add_option("--d", d_range, "Dimension or range lo..hi");
  sweep->add_option("--trials", trials, "Trials per dimension");
  sweep->add_option("--secrets", secrets_per_trial, "Random secrets per trial");
  sweep->add_option("--mu", mu, "Confidence parameter (probability 1 - e^-mu)");
  sweep->add_option("--delta", delta, "Failure probability for the norm bound");
  sweep->add_option("--threads", threads, "Worker threads (0: all cores)");
  sweep->add_option("--summary", summary_path, "Summary JSON path (default: <out>.summary.json)");
  sweep->add_flag("--no-timing", no_timing, "Write elapsed_s as 0 for byte-identical reruns");

  Index n = 16;
  int compare_trials = 300;
  std::string seminorm = "operator";
  auto* compare = app.add_subcommand("compare", "Gaussian vs Haar seminorm ratio at p = 1");
  add_common_options(compare, common, false);
  compare->add_option("--n", n, "Matrix size");
  compare->add_option("--trials", compare_trials, "Samples of each ensemble");
  compare->add_option("--seminorm", seminorm, "operator | triple-max");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (build->parsed()) {
      if (!scheme.scheme_file.empty()) throw UsageError("build takes constructor parameters, not --scheme");
      const SchemeSpec spec = spec_from_args(scheme);
      const Tensor4cd t = build_tensor(spec);
      const CodeSpace cs = CodeSpace::from_tensor(t);
      emit(scheme_to_json(spec, t).dump(2) + "\n", common, out);
      if (cs.r() <= 5) print_kets(cs, err);
      return kExitOk;
    }

    if (certify_cmd->parsed()) {
      const CodeSpace cs = load_code_space(scheme);
      Tolerances tol;
      tol.linear = common.tol;
      tol.entropy = std::max(common.tol, tol.entropy);
      const auto report = certify(cs, n_secrets, resolve_seed(common), tol, resolve_base(common, LogBase::Bits));
      emit(to_json(report).dump(2) + "\n", common, out);
      err << "verdict: " << verdict_name(report.verdict) << "  I3 = " << report.i3_value << ' '
          << base_name(report.base) << "  -2S(R) = " << -2.0 * report.s_r << '\n';
      for (Leg leg : kAllLegs) {
        const auto& leg_res = report.multiunitary.legs[leg_index(leg)];
        err << "  fold " << leg_name(leg) << ": deviation " << leg_res.deviation
            << (leg_res.is_unitary ? "  unitary" : "  NOT unitary") << '\n';
      }
      return report.verdict == Verdict::Perfect ? kExitOk : kExitNegative;
    }

    if (recover_cmd->parsed()) {
      const CodeSpace cs = load_code_space(scheme);
      const Leg erased = parse_leg(erased_name);
      const DensityMatrix secret = secret_from_spec(secret_spec, cs.r(), resolve_seed(common));
      try {
        const auto result = recover(cs, secret, erased, common.tol);
        json j = to_json(result);
        j["erased"] = leg_name(erased);
        j["secret"] = matrix_to_json(secret.matrix());
        emit(j.dump(2) + "\n", common, out);
        err << "recovered after erasing " << leg_name(erased) << ", fidelity " << std::setprecision(15)
            << result.fidelity << '\n';
        return kExitOk;
      } catch (const RecoveryImpossible& e) {
        const json j{{"status", "recovery_impossible"},
                     {"erased", leg_name(erased)},
                     {"residual", e.residual()},
                     {"message", e.what()}};
        emit(j.dump(2) + "\n", common, out);
        err << e.what() << '\n';
        return kExitNegative;
      }
    }

    if (audit->parsed()) {
      const CodeSpace cs = load_code_space(scheme);
      const LogBase base = resolve_base(common, LogBase::Bits);
      const auto seed = resolve_seed(common);
      const auto table = vip_audit(cs, n_secrets, seed, base, common.tol);
      const auto probe = monogamy_probe(cs, n_secrets, seed, base);
      json bounds = json::array();
      for (const auto& m : certification_secrets(cs.r(), n_secrets, seed)) {
        bounds.push_back(to_json(bound_check(cs, validated_secret(m, cs.r()), base)));
      }
      const json j{{"coalitions", to_json(table)}, {"monogamy", to_json(probe)}, {"bounds", bounds}};
      emit(j.dump(2) + "\n", common, out);
      for (const auto& row : table.pairs) {
        err << "  pair without " << leg_name(row.erased) << ": " << (row.feasible ? "can" : "cannot")
            << " recover\n";
      }
      if (table.vip) err << "  VIP party: " << leg_name(*table.vip) << '\n';
      err << "  max I3 over " << probe.samples << " secrets: " << probe.max_i3 << ' ' << base_name(base) << '\n';
      return kExitOk;
    }

    if (sweep->parsed()) {
      if (resolve_base(common, LogBase::Nats) != LogBase::Nats) throw UsageError("sweep reports in nats only");
      const auto [lo, hi] = parse_range(d_range);
      if (lo < 2 || hi < lo) throw UsageError("--d range must satisfy 2 <= lo <= hi");
      const auto seed = resolve_seed(common);
      std::string csv = std::string(kTrialCsvHeader) + "\n";
      json summaries = json::array();
      int sandwich_violations = 0;
      for (Index d = lo; d <= hi; ++d) {
        SweepOptions opt;
        opt.d = d;
        opt.trials = trials;
        opt.secrets_per_trial = secrets_per_trial;
        opt.seed = seed;
        opt.mu = mu;
        opt.delta = delta;
        opt.threads = threads;
        const auto result = i3_sweep(opt);
        for (const auto& rec : result.records) csv += trial_csv_row(rec, !no_timing) + "\n";
        summaries.push_back(to_json(result.summary));
        sandwich_violations += result.summary.sandwich_violation_count;
        err << "d=" << d << ": max I3+2S(R) = " << result.summary.i3_worst_quantiles.max
            << " nats, bound " << result.summary.bound_nats << ", violations " << result.summary.violation_count
            << '\n';
      }
      const json summary{{"seed", seed}, {"sweeps", summaries}};
      emit(csv, common, out);
      std::string path = summary_path;
      if (path.empty() && !common.out.empty()) path = common.out + ".summary.json";
      if (path.empty()) {
        err << summary.dump(2) << '\n';
      } else {
        std::ofstream file(path);
        if (!file) throw UsageError("cannot write '" + path + "'");
        file << summary.dump(2) << '\n';
      }
      return sandwich_violations == 0 ? kExitOk : kExitNegative;
    }

    if (compare->parsed()) {
      const auto stats = gaussian_unitary_comparison(n, compare_trials, parse_seminorm(seminorm), resolve_seed(common));
      emit(to_json(stats).dump(2) + "\n", common, out);
      err << "E||g|| / E||u|| = " << stats.ratio << " in [" << stats.ratio_low << ", " << stats.ratio_high
          << "], bracket [" << stats.lower_bound << ", " << stats.upper_bound << "]\n";
      return stats.within_bounds ? kExitOk : kExitNegative;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CodeSpaceError& e) {
    err << "invalid scheme: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace triptych::cli
