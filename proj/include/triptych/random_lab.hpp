#pragma once

// Haar and Ginibre sampling plus the Monte-Carlo checks on random scrambling unitaries.

#include <cstdint>
#include <span>
#include <vector>

#include "triptych/codespace.hpp"
#include "triptych/rng.hpp"

namespace triptych {

/// i.i.d. entries (x + iy)/sqrt(2), x, y standard normal.
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Philox4x32& rng);
ComplexMatrix sample_ginibre(Eigen::Index n, std::uint64_t seed);

/// QR of a Ginibre matrix with Q's columns rephased by the phases of diag(R).
ComplexMatrix haar_unitary(Eigen::Index n, Philox4x32& rng);
ComplexMatrix sample_haar_unitary(Eigen::Index n, std::uint64_t seed);

/// G G† / Tr(G G†) with G an n x n Ginibre matrix.
ComplexMatrix hilbert_schmidt_density(Eigen::Index n, Philox4x32& rng);
/// |psi><psi| with |psi> uniform on the unit sphere.
ComplexMatrix random_pure_density(Eigen::Index n, Philox4x32& rng);

/// `n_random` Hilbert-Schmidt densities followed by the extremes: the uniform
/// secret 1/r and every pure basis secret |k><k|.
std::vector<ComplexMatrix> sample_secrets(Eigen::Index r, int n_random, Philox4x32& rng);

/// t_{i s1 s2 s3} = u_{(i s1),(s2 s3)} for a d^2 x d^2 matrix u.
Tensor4cd tensor_from_matrix(const ComplexMatrix& u, Eigen::Index d);

struct TrialRecord {
  std::uint64_t seed = 0;
  Eigen::Index d = 0;
  std::array<double, 3> norms{};  // ||u||, ||u^R||, ||u^Gamma||
  double i3_worst = 0.0;          // max over secrets of I3 + 2S(R), nats
  double sandwich_gap = 0.0;     // min over secrets of 2 sum ln||fold|| - (I3 + 2S(R))
  double elapsed = 0.0;           // seconds
};

/// Haar unitary of size d^2 folded as a tensor; records the three operator norms.
TrialRecord norm_triple_trial(Eigen::Index d, std::uint64_t seed);

/// Bound on I3 + 2S(R) in nats holding with probability 1 - e^{-mu}.
double i3_bound_nats(double mu);
/// Bound on max(||u||, ||u^R||, ||u^Gamma||) holding with probability 1 - delta.
double norm_triple_bound(double delta);

struct Quantiles {
  double min = 0, q05 = 0, q25 = 0, median = 0, q75 = 0, q95 = 0, max = 0;
};
Quantiles quantiles(std::vector<double> values);

struct SweepOptions {
  Eigen::Index d = 2;
  int trials = 100;
  int secrets_per_trial = 20;
  std::uint64_t seed = 0;
  double mu = 3.0;
  double delta = 0.01;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepSummary {
  Eigen::Index d = 0;
  int trials = 0;
  int secrets_per_trial = 0;
  std::array<Quantiles, 3> norm_quantiles;
  Quantiles i3_worst_quantiles;
  double mu = 0.0;
  double bound_nats = 0.0;
  int violation_count = 0;  // trials with i3_worst > bound_nats
  double delta = 0.0;
  double norm_bound = 0.0;
  int norm_violation_count = 0;  // trials with a norm above norm_bound(delta)
  double delta_from_mu = 0.0;    // e^{-mu}
  double norm_bound_from_mu = 0.0;
  int norm_violation_count_from_mu = 0;
  int sandwich_violation_count = 0;  // must be zero
  double min_sandwich_gap = 0.0;
};

struct SweepResult {
  std::vector<TrialRecord> records;  // ordered by trial index
  SweepSummary summary;
};

/// Per trial: Haar u, code space |i~> = (1/sqrt d) sum u_{(i s1),(s2 s3)} |s1 s2 s3>,
/// worst I3 + 2S(R) over sampled secrets. Trial k uses substream derive_seed(seed, d<<32 | k).
SweepResult i3_sweep(const SweepOptions& options);

enum class Seminorm { Operator, TripleMax };

std::string seminorm_name(Seminorm s);
Seminorm parse_seminorm(const std::string& name);

/// Operator norm, or max of the operator norms of the three foldings of an n = d^2 matrix.
double seminorm_value(const ComplexMatrix& m, Seminorm seminorm);

struct RatioStatistics {
  Eigen::Index n = 0;
  int trials = 0;
  Seminorm seminorm = Seminorm::Operator;
  double mean_g = 0, stderr_g = 0;
  double mean_u = 0, stderr_u = 0;
  double ratio = 0;
  double ratio_low = 0, ratio_high = 0;  // 3-sigma interval on the ratio of means
  double lower_bound = 0, upper_bound = 0;  // sqrt(n)/8 and 4 sqrt(n)
  bool within_bounds = false;               // whole interval inside the bracket
};

RatioStatistics summarize_ratio(Eigen::Index n, std::span<const double> g_norms,
                                std::span<const double> u_norms, Seminorm seminorm);

/// E||g|| / E||u|| at p = 1 for n x n Ginibre g and Haar u.
RatioStatistics gaussian_unitary_comparison(Eigen::Index n, int trials, Seminorm seminorm,
                                            std::uint64_t seed);

}  // namespace triptych
