// Copyright 2026 The thermoperf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Paired-sample testing for baseline-versus-valence ROI series.
//
// The battery: a Kolmogorov-Smirnov normality check on the paired
// differences selects either Student's t for related samples (normal) or the
// Wilcoxon signed-rank test (not normal). For temperatures a change must also
// clear the camera's sensitivity before it counts as significant.

#ifndef THERMOPERF_STATS_HPP_
#define THERMOPERF_STATS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thermoperf/roi.hpp"

namespace thermoperf {

inline constexpr std::size_t kMinKsSample = 8;
inline constexpr std::size_t kMaxExactWilcoxon = 20;
inline constexpr double kDefaultSensitivityC = 0.05;
// Temperature differences are compared with the sensitivity at the 0.01 C
// resolution the result tables are printed with.
inline constexpr double kTechnicalResolutionC = 0.01;

struct KsResult {
  double statistic = 0.0;  // sup |F_n - Phi|
  double p_value = 1.0;
};

// Survival function of the limiting Kolmogorov distribution,
// P(sqrt(n) D > lambda).
double kolmogorov_survival(double lambda);

// One-sample KS against N(sample mean, sample sd) with the asymptotic
// p-value. Parameters are estimated from the data without the Lilliefors
// correction, so the p-value is anti-conservative.
// Throws kInvalidInput for fewer than kMinKsSample values and kDegenerate
// for a zero sample sd.
KsResult ks_normality_test(std::span<const double> sample);
inline double ks_normality(std::span<const double> sample) {
  return ks_normality_test(sample).p_value;
}

struct TTestResult {
  double t = 0.0;
  double p_two_sided = 1.0;
  std::size_t df = 0;
};

// Differences are y - x. Throws kPairing on unequal lengths or n < 2 and
// kDegenerate when the differences have zero variance.
TTestResult paired_t(std::span<const double> x, std::span<const double> y);

enum class WilcoxonMethod { kAuto, kExact, kNormal };

struct WilcoxonResult {
  double w = 0.0;  // min(W+, W-)
  double w_plus = 0.0;
  double w_minus = 0.0;
  double p_two_sided = 1.0;
  std::size_t n_effective = 0;  // nonzero differences
  bool exact = false;
};

// Zero differences are dropped and tied |d| share their average rank.
// kAuto uses the exact null distribution up to kMaxExactWilcoxon effective
// pairs and the tie-corrected normal approximation (with continuity
// correction) beyond. Throws kPairing on unequal lengths and kDegenerate
// when every difference is zero.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                    WilcoxonMethod method = WilcoxonMethod::kAuto);

enum class TestKind { kPairedT, kWilcoxon };
std::string_view to_string(TestKind kind);

enum class Significance { kNone, kP05, kP001 };
std::string_view to_string(Significance significance);
Significance significance_from_p(double p);

enum class PairingPolicy {
  // Baseline frame i pairs with the mean of valence frames k*i .. k*i+k-1
  // when the valence set is k times longer; otherwise falls back to kTruncate.
  kBlock,
  // Index-to-index over the shorter length.
  kTruncate,
};
std::string_view to_string(PairingPolicy policy);
PairingPolicy parse_pairing_policy(std::string_view text);

struct PairedSeries {
  std::vector<double> baseline;
  std::vector<double> valence;
  PairingPolicy applied = PairingPolicy::kTruncate;
};

// Throws kPairing when either series is empty.
PairedSeries align_pairs(std::span<const double> baseline, std::span<const double> valence,
                         PairingPolicy policy);

struct TestReport {
  TestKind test_used = TestKind::kPairedT;
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_pairs = 0;
  std::optional<double> normality_p;  // empty when not assessed
  Significance significance = Significance::kNone;
  // Temperature only: |delta| at 0.01 C resolution exceeds the sensitivity.
  // Always true for perfusion, which has no sensor gate.
  bool technically_significant = false;
  // Headline verdict: statistically significant and, for temperature,
  // technically significant.
  bool significant = false;
  double delta_abs = 0.0;
  PairingPolicy pairing = PairingPolicy::kBlock;
  std::string diagnostic;
};

struct ClassifyOptions {
  double sensitivity_threshold = kDefaultSensitivityC;
  PairingPolicy pairing = PairingPolicy::kBlock;
};

bool technically_significant(double delta_abs_c, double sensitivity_threshold_c);

// Degenerate inputs (e.g. identical series) produce a kNone report with a
// diagnostic rather than an exception; only a pairing failure throws.
TestReport classify_significance(const RoiSeries& baseline, const RoiSeries& valence,
                                 const ClassifyOptions& options = {});

}  // namespace thermoperf

#endif  // THERMOPERF_STATS_HPP_
