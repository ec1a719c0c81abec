#pragma once

// JSON encodings: Tensor4 {"dims","re","im"}, scheme files, and report objects.
// CSV encoding of sweep trial records.

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "triptych/random_lab.hpp"
#include "triptych/verifier.hpp"

namespace triptych {

using json = nlohmann::json;

/// Malformed JSON input (wrong types, missing keys, inconsistent sizes).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json tensor_to_json(const Tensor4cd& t);
Tensor4cd tensor_from_json(const json& j);

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// Constructor parameters of a scheme file.
struct SchemeSpec {
  std::string kind;  // shift | permutation | vip | raw
  Eigen::Index d = 0;
  Eigen::Index k1 = 0;
  Eigen::Index k2 = 0;
  Permutation sigma1, sigma2, sigma3;
  std::optional<Tensor4cd> tensor;
};

/// Runs the constructor named by `kind` (raw: returns the embedded tensor).
Tensor4cd build_tensor(const SchemeSpec& spec);

/// Scheme file with the parameters and the built tensor embedded.
json scheme_to_json(const SchemeSpec& spec, const Tensor4cd& t);
/// Parses a scheme file. An embedded tensor on a non-raw kind must match the
/// constructor output to 1e-12.
SchemeSpec scheme_from_json(const json& j);
Tensor4cd tensor_from_scheme(const json& j);

json to_json(const UnitarityResidual& r);
json to_json(const MultiUnitarityReport& r);
json to_json(const SchemeReport& r);
json to_json(const BoundCheck& b);
json to_json(const CoalitionTable& t);
json to_json(const MonogamyProbe& p);
json to_json(const RecoveryResult& r);
json to_json(const Quantiles& q);
json to_json(const SweepSummary& s);
json to_json(const RatioStatistics& s);

inline constexpr const char* kTrialCsvHeader = "seed,d,norm_t,norm_r,norm_g,i3_worst_nats,elapsed_s";
/// One CSV row (no newline). `with_timing = false` writes elapsed_s as 0.
std::string trial_csv_row(const TrialRecord& rec, bool with_timing = true);

}  // namespace triptych
