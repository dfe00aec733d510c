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

#include "thermoperf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

namespace thermoperf {
namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    std::ostringstream os;
    os << "paired samples differ in length (" << x.size() << " vs " << y.size() << ")";
    throw Error(ErrorKind::kPairing, os.str());
  }
}

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

Moments sample_moments(std::span<const double> v) {
  const auto n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form converges fast for small lambda:
    // K(l) = sqrt(2 pi) / l * sum_k exp(-(2k-1)^2 pi^2 / (8 l^2)).
    const double base = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(odd * odd * base);
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    q += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_normality_test(std::span<const double> sample) {
  if (sample.size() < kMinKsSample) {
    std::ostringstream os;
    os << "normality test needs at least " << kMinKsSample << " values, got " << sample.size();
    throw Error(ErrorKind::kInvalidInput, os.str());
  }
  const auto [mean, sd] = sample_moments(sample);
  if (!(sd > 0.0)) {
    throw Error(ErrorKind::kDegenerate, "normality test on a sample with zero variance");
  }
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf((sorted[i] - mean) / sd);
    const double upper = static_cast<double>(i + 1) / n - f;
    const double lower = f - static_cast<double>(i) / n;
    d = std::max({d, upper, lower});
  }
  return KsResult{d, kolmogorov_survival(std::sqrt(n) * d)};
}

TTestResult paired_t(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  if (x.size() < 2) {
    throw Error(ErrorKind::kPairing, "paired t-test needs at least 2 pairs");
  }
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = y[i] - x[i];
  const auto [mean, sd] = sample_moments(d);
  if (!(sd > 0.0)) {
    throw Error(ErrorKind::kDegenerate, "paired differences have zero variance");
  }
  const auto n = static_cast<double>(d.size());
  TTestResult r;
  r.df = d.size() - 1;
  r.t = mean / (sd / std::sqrt(n));
  const boost::math::students_t dist(static_cast<double>(r.df));
  r.p_two_sided = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
  return r;
}

namespace {

struct RankedDifferences {
  // Ranks are doubled so tied averages stay integral.
  std::vector<std::uint32_t> doubled_ranks;
  std::vector<bool> positive;
  // Sum over tie groups of (t^3 - t).
  double tie_correction = 0.0;
};

RankedDifferences rank_differences(std::span<const double> x, std::span<const double> y) {
  std::vector<double> d;
  d.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = y[i] - x[i];
    if (diff != 0.0) d.push_back(diff);
  }
  if (d.empty()) {
    throw Error(ErrorKind::kDegenerate, "every paired difference is zero");
  }
  std::vector<std::size_t> order(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&d](std::size_t a, std::size_t b) { return std::abs(d[a]) < std::abs(d[b]); });

  RankedDifferences out;
  out.doubled_ranks.resize(d.size());
  out.positive.resize(d.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
    // 1-based positions i+1 .. j+1 share rank (i + j + 2) / 2.
    const auto doubled = static_cast<std::uint32_t>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) out.doubled_ranks[order[k]] = doubled;
    const auto t = static_cast<double>(j - i + 1);
    out.tie_correction += t * t * t - t;
    i = j + 1;
  }
  for (std::size_t k = 0; k < d.size(); ++k) out.positive[k] = d[k] > 0.0;
  return out;
}

// P(2 W+ <= bound) under the null, by counting sign patterns over the
// doubled ranks.
double exact_lower_tail(const std::vector<std::uint32_t>& doubled_ranks, std::uint64_t bound) {
  std::uint64_t max_sum = 0;
  for (auto r : doubled_ranks) max_sum += r;
  std::vector<double> ways(max_sum + 1, 0.0);
  ways[0] = 1.0;
  std::uint64_t reach = 0;
  for (auto r : doubled_ranks) {
    reach += r;
    for (std::uint64_t s = reach; s >= r; --s) {
      ways[s] += ways[s - r];
      if (s == r) break;
    }
  }
  double hits = 0.0;
  for (std::uint64_t s = 0; s <= std::min(bound, max_sum); ++s) hits += ways[s];
  return hits / std::ldexp(1.0, static_cast<int>(doubled_ranks.size()));
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                    WilcoxonMethod method) {
  require_same_length(x, y);
  const RankedDifferences ranked = rank_differences(x, y);
  const std::size_t n = ranked.doubled_ranks.size();

  std::uint64_t doubled_plus = 0;
  std::uint64_t doubled_total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    doubled_total += ranked.doubled_ranks[i];
    if (ranked.positive[i]) doubled_plus += ranked.doubled_ranks[i];
  }
  const std::uint64_t doubled_minus = doubled_total - doubled_plus;
  const std::uint64_t doubled_w = std::min(doubled_plus, doubled_minus);

  WilcoxonResult r;
  r.n_effective = n;
  r.w_plus = static_cast<double>(doubled_plus) / 2.0;
  r.w_minus = static_cast<double>(doubled_minus) / 2.0;
  r.w = static_cast<double>(doubled_w) / 2.0;
  r.exact = method == WilcoxonMethod::kExact ||
            (method == WilcoxonMethod::kAuto && n <= kMaxExactWilcoxon);

  if (r.exact) {
    if (n > 62) throw Error(ErrorKind::kInvalidInput, "exact Wilcoxon limited to 62 pairs");
    r.p_two_sided = std::min(1.0, 2.0 * exact_lower_tail(ranked.doubled_ranks, doubled_w));
    return r;
  }

  const auto nn = static_cast<double>(n);
  const double mean = nn * (nn + 1.0) / 4.0;
  const double variance = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - ranked.tie_correction / 48.0;
  if (!(variance > 0.0)) {
    r.p_two_sided = 1.0;
    return r;
  }
  const double numerator = std::max(0.0, std::abs(r.w - mean) - 0.5);
  const double z = numerator / std::sqrt(variance);
  r.p_two_sided = std::min(1.0, std::erfc(z / std::numbers::sqrt2));
  return r;
}

std::string_view to_string(TestKind kind) {
  return kind == TestKind::kPairedT ? "T_PAIRED" : "WILCOXON";
}

std::string_view to_string(Significance significance) {
  switch (significance) {
    case Significance::kNone: return "NONE";
    case Significance::kP05: return "P05";
    case Significance::kP001: return "P001";
  }
  return "NONE";
}

Significance significance_from_p(double p) {
  if (p < 0.001) return Significance::kP001;
  if (p < 0.05) return Significance::kP05;
  return Significance::kNone;
}

std::string_view to_string(PairingPolicy policy) {
  return policy == PairingPolicy::kBlock ? "block" : "truncate";
}

PairingPolicy parse_pairing_policy(std::string_view text) {
  if (text == "block") return PairingPolicy::kBlock;
  if (text == "truncate") return PairingPolicy::kTruncate;
  throw Error(ErrorKind::kParameter, "unknown pairing policy '" + std::string(text) + "'");
}

PairedSeries align_pairs(std::span<const double> baseline, std::span<const double> valence,
                         PairingPolicy policy) {
  if (baseline.empty() || valence.empty()) {
    throw Error(ErrorKind::kPairing, "cannot pair an empty series");
  }
  PairedSeries out;
  if (policy == PairingPolicy::kBlock && valence.size() % baseline.size() == 0) {
    const std::size_t k = valence.size() / baseline.size();
    out.applied = PairingPolicy::kBlock;
    out.baseline.assign(baseline.begin(), baseline.end());
    out.valence.reserve(baseline.size());
    for (std::size_t i = 0; i < baseline.size(); ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < k; ++j) sum += valence[k * i + j];
      out.valence.push_back(sum / static_cast<double>(k));
    }
    return out;
  }
  const std::size_t n = std::min(baseline.size(), valence.size());
  out.applied = PairingPolicy::kTruncate;
  out.baseline.assign(baseline.begin(), baseline.begin() + static_cast<std::ptrdiff_t>(n));
  out.valence.assign(valence.begin(), valence.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

bool technically_significant(double delta_abs_c, double sensitivity_threshold_c) {
  const double steps = std::floor(std::abs(delta_abs_c) / kTechnicalResolutionC + 0.5);
  return steps > sensitivity_threshold_c / kTechnicalResolutionC + 1e-6;
}

TestReport classify_significance(const RoiSeries& baseline, const RoiSeries& valence,
                                 const ClassifyOptions& options) {
  const PairedSeries pairs = align_pairs(baseline.values, valence.values, options.pairing);

  TestReport report;
  report.pairing = pairs.applied;
  report.n_pairs = pairs.baseline.size();
  report.delta_abs = set_average(valence.values).mean - set_average(baseline.values).mean;
  report.technically_significant =
      baseline.quantity != Quantity::kTemperature ||
      technically_significant(report.delta_abs, options.sensitivity_threshold);

  std::vector<double> diffs(pairs.baseline.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) diffs[i] = pairs.valence[i] - pairs.baseline[i];

  bool normal = false;
  if (diffs.size() < kMinKsSample) {
    report.diagnostic = "too few pairs for the normality check; using Wilcoxon";
  } else {
    try {
      report.normality_p = ks_normality(diffs);
      normal = *report.normality_p >= 0.05;
    } catch (const Error& e) {
      report.diagnostic = std::string(e.what()) + "; using Wilcoxon";
    }
  }

  try {
    if (normal) {
      const auto t = paired_t(pairs.baseline, pairs.valence);
      report.test_used = TestKind::kPairedT;
      report.statistic = t.t;
      report.p_value = t.p_two_sided;
    } else {
      const auto w = wilcoxon_signed_rank(pairs.baseline, pairs.valence);
      report.test_used = TestKind::kWilcoxon;
      report.statistic = w.w;
      report.p_value = w.p_two_sided;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerate) throw;
    report.test_used = normal ? TestKind::kPairedT : TestKind::kWilcoxon;
    report.statistic = 0.0;
    report.p_value = 1.0;
    report.significance = Significance::kNone;
    report.significant = false;
    report.diagnostic = e.what();
    return report;
  }
  report.significance = significance_from_p(report.p_value);
  report.significant = report.significance != Significance::kNone && report.technically_significant;
  return report;
}

}  // namespace thermoperf
