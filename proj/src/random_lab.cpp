#include "triptych/random_lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace triptych {

using Index = Eigen::Index;

ComplexMatrix ginibre(Index rows, Index cols, Philox4x32& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::numbers::sqrt2;
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cd(re * scale, im * scale);
    }
  }
  return g;
}

ComplexMatrix sample_ginibre(Index n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample_ginibre: n must be positive");
  Philox4x32 rng(seed);
  return ginibre(n, n, rng);
}

ComplexMatrix haar_unitary(Index n, Philox4x32& rng) {
  if (n < 1) throw ValidationError("haar_unitary: n must be positive");
  const ComplexMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const auto& packed = qr.matrixQR();
  for (Index k = 0; k < n; ++k) {
    const cd diag = packed(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

ComplexMatrix sample_haar_unitary(Index n, std::uint64_t seed) {
  Philox4x32 rng(seed);
  return haar_unitary(n, rng);
}

ComplexMatrix hilbert_schmidt_density(Index n, Philox4x32& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

ComplexMatrix random_pure_density(Index n, Philox4x32& rng) {
  ComplexVector psi = ginibre(n, 1, rng).col(0);
  psi.normalize();
  return psi * psi.adjoint();
}

std::vector<ComplexMatrix> sample_secrets(Index r, int n_random, Philox4x32& rng) {
  std::vector<ComplexMatrix> secrets;
  secrets.reserve(static_cast<std::size_t>(std::max(n_random, 0) + r + 1));
  for (int k = 0; k < n_random; ++k) secrets.push_back(hilbert_schmidt_density(r, rng));
  secrets.push_back(ComplexMatrix::Identity(r, r) / static_cast<double>(r));
  for (Index k = 0; k < r; ++k) {
    ComplexMatrix pure = ComplexMatrix::Zero(r, r);
    pure(k, k) = 1.0;
    secrets.push_back(std::move(pure));
  }
  return secrets;
}

Tensor4cd tensor_from_matrix(const ComplexMatrix& u, Index d) {
  if (u.rows() != d * d || u.cols() != d * d) {
    throw DimensionError("tensor_from_matrix: expected a d^2 x d^2 matrix");
  }
  auto t = Tensor4cd::uniform(d);
  for (Index i = 0; i < d; ++i)
    for (Index s1 = 0; s1 < d; ++s1)
      for (Index s2 = 0; s2 < d; ++s2)
        for (Index s3 = 0; s3 < d; ++s3) t(i, s1, s2, s3) = u(i * d + s1, s2 * d + s3);
  return t;
}

namespace {

std::array<double, 3> fold_norms(const Tensor4cd& t) {
  std::array<double, 3> norms{};
  for (Leg leg : kAllLegs) norms[leg_index(leg)] = operator_norm(fold(t, leg));
  return norms;
}


TrialRecord run_trial(Index d, std::uint64_t trial_seed, int secrets_per_trial, bool with_secrets) {
  const auto start = std::chrono::steady_clock::now();
  Philox4x32 rng(trial_seed);
  const ComplexMatrix u = haar_unitary(d * d, rng);
  const Tensor4cd t = tensor_from_matrix(u, d);

  TrialRecord rec;
  rec.seed = trial_seed;
  rec.d = d;
  rec.norms = fold_norms(t);

  if (with_secrets) {
    const CodeSpace cs = CodeSpace::from_tensor(t);
    double budget = 0.0;
    for (double n : rec.norms) budget += 2.0 * std::log(n);
    rec.i3_worst = -std::numeric_limits<double>::infinity();
    rec.sandwich_gap = std::numeric_limits<double>::infinity();
    for (const auto& secret : sample_secrets(d, secrets_per_trial, rng)) {
      const auto info = tripartite_information(purify(cs, secret), LogBase::Nats);
      const double excess = info.value + 2.0 * info.s_r;
      rec.i3_worst = std::max(rec.i3_worst, excess);
      rec.sandwich_gap = std::min(rec.sandwich_gap, budget - excess);
    }
  }
  rec.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

template <typename F>
void parallel_for(int count, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < count; k = next++) body(k);
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
}

double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double stderr_of(std::span<const double> xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
}

}  // namespace

TrialRecord norm_triple_trial(Index d, std::uint64_t seed) {
  if (d < 2) throw ValidationError("norm_triple_trial: d must be at least 2");
  return run_trial(d, seed, 0, false);
}

double i3_bound_nats(double mu) {
  return std::log(48.0 * std::numbers::sqrt2) + 6.0 + 3.0 * std::log(mu);
}

double norm_triple_bound(double delta) {
  return 48.0 * std::numbers::e * std::sqrt(2.0 * std::log(1.0 / delta));
}

Quantiles quantiles(std::vector<double> values) {
  Quantiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  q.min = values.front();
  q.q05 = at(0.05);
  q.q25 = at(0.25);
  q.median = at(0.5);
  q.q75 = at(0.75);
  q.q95 = at(0.95);
  q.max = values.back();
  return q;
}

SweepResult i3_sweep(const SweepOptions& options) {
  if (options.d < 2) throw ValidationError("i3_sweep: d must be at least 2");
  if (options.trials < 1) throw ValidationError("i3_sweep: trials must be positive");
  if (options.secrets_per_trial < 0) throw ValidationError("i3_sweep: negative secrets_per_trial");
  if (!(options.mu > 0.0)) throw ValidationError("i3_sweep: mu must be positive");
  if (!(options.delta > 0.0 && options.delta < 1.0)) throw ValidationError("i3_sweep: delta must be in (0,1)");

  SweepResult result;
  result.records.resize(static_cast<std::size_t>(options.trials));
  parallel_for(options.trials, options.threads, [&](int k) {
    const auto stream = (static_cast<std::uint64_t>(options.d) << 32) | static_cast<std::uint64_t>(k);
    result.records[static_cast<std::size_t>(k)] =
        run_trial(options.d, derive_seed(options.seed, stream), options.secrets_per_trial, true);
  });

  SweepSummary& s = result.summary;
  s.d = options.d;
  s.trials = options.trials;
  s.secrets_per_trial = options.secrets_per_trial;
  s.mu = options.mu;
  s.bound_nats = i3_bound_nats(options.mu);
  s.delta = options.delta;
  s.norm_bound = norm_triple_bound(options.delta);
  s.delta_from_mu = std::exp(-options.mu);
  s.norm_bound_from_mu = norm_triple_bound(s.delta_from_mu);
  s.min_sandwich_gap = std::numeric_limits<double>::infinity();

  std::array<std::vector<double>, 3> norms;
  std::vector<double> worst;
  for (const auto& rec : result.records) {
    for (int a = 0; a < 3; ++a) norms[a].push_back(rec.norms[a]);
    worst.push_back(rec.i3_worst);
    const double top = *std::max_element(rec.norms.begin(), rec.norms.end());
    if (rec.i3_worst > s.bound_nats) ++s.violation_count;
    if (top > s.norm_bound) ++s.norm_violation_count;
    if (top > s.norm_bound_from_mu) ++s.norm_violation_count_from_mu;
    if (rec.sandwich_gap < -kI3FormTol) ++s.sandwich_violation_count;
    s.min_sandwich_gap = std::min(s.min_sandwich_gap, rec.sandwich_gap);
  }
  for (int a = 0; a < 3; ++a) s.norm_quantiles[a] = quantiles(norms[a]);
  s.i3_worst_quantiles = quantiles(worst);
  return result;
}

std::string seminorm_name(Seminorm s) { return s == Seminorm::Operator ? "operator" : "triple-max"; }

Seminorm parse_seminorm(const std::string& name) {
  if (name == "operator") return Seminorm::Operator;
  if (name == "triple-max") return Seminorm::TripleMax;
  throw ValidationError("unknown seminorm '" + name + "' (expected operator or triple-max)");
}

double seminorm_value(const ComplexMatrix& m, Seminorm seminorm) {
  if (seminorm == Seminorm::Operator) return operator_norm(m);
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  const auto norms = fold_norms(tensor_from_matrix(m, d));
  return *std::max_element(norms.begin(), norms.end());
}

RatioStatistics summarize_ratio(Index n, std::span<const double> g_norms, std::span<const double> u_norms,
                                Seminorm seminorm) {
  if (g_norms.size() != u_norms.size() || g_norms.empty()) {
    throw ValidationError("summarize_ratio: need equally many non-empty samples");
  }
  RatioStatistics st;
  st.n = n;
  st.trials = static_cast<int>(g_norms.size());
  st.seminorm = seminorm;
  st.mean_g = mean_of(g_norms);
  st.mean_u = mean_of(u_norms);
  st.stderr_g = stderr_of(g_norms, st.mean_g);
  st.stderr_u = stderr_of(u_norms, st.mean_u);
  st.ratio = st.mean_g / st.mean_u;
  constexpr double z = 3.0;
  st.ratio_low = (st.mean_g - z * st.stderr_g) / (st.mean_u + z * st.stderr_u);
  st.ratio_high = (st.mean_g + z * st.stderr_g) / std::max(st.mean_u - z * st.stderr_u, 1e-300);
  const double root_n = std::sqrt(static_cast<double>(n));
  st.lower_bound = root_n / 8.0;
  st.upper_bound = 4.0 * root_n;
  st.within_bounds = st.ratio_low >= st.lower_bound && st.ratio_high <= st.upper_bound;
  return st;
}

RatioStatistics gaussian_unitary_comparison(Index n, int trials, Seminorm seminorm, std::uint64_t seed) {
  if (n < 2) throw ValidationError("gaussian_unitary_comparison: n must be at least 2");
  if (trials < 2) throw ValidationError("gaussian_unitary_comparison: need at least 2 trials");
  if (seminorm == Seminorm::TripleMax) {
    const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (d * d != n) throw ValidationError("triple-max seminorm needs n to be a perfect square");
  }
  std::vector<double> g_norms(static_cast<std::size_t>(trials)), u_norms(static_cast<std::size_t>(trials));
  for (int k = 0; k < trials; ++k) {
    Philox4x32 rng(seed, static_cast<std::uint64_t>(k));
    g_norms[static_cast<std::size_t>(k)] = seminorm_value(ginibre(n, n, rng), seminorm);
    u_norms[static_cast<std::size_t>(k)] = seminorm_value(haar_unitary(n, rng), seminorm);
  }
  return summarize_ratio(n, g_norms, u_norms, seminorm);
}

}  // namespace triptych
