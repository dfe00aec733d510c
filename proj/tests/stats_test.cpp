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

// Reference p-values are frozen from scipy / mpmath by
// tests/oracles/freeze_values.py on inputs regenerated here bit for bit.

#include "thermoperf/stats.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "support/oracles.hpp"
#include "support/splitmix.hpp"

namespace thermoperf {
namespace {

using testing::SplitMix64;

TEST(KolmogorovTest, SurvivalKnownValues) {
  EXPECT_NEAR(kolmogorov_survival(0.0), 1.0, 1e-15);
  // Classical critical values: 1.3581 at 5%, 1.6276 at 1%.
  EXPECT_NEAR(kolmogorov_survival(1.3581), 0.05, 1e-4);
  EXPECT_NEAR(kolmogorov_survival(1.6276), 0.01, 1e-4);
  EXPECT_LT(kolmogorov_survival(5.0), 1e-20);
  // The two series agree where they hand over.
  EXPECT_NEAR(kolmogorov_survival(1.18 - 1e-12), kolmogorov_survival(1.18 + 1e-12), 1e-10);
}

TEST(KsNormalityTest, UniformSampleIsRejected) {
  SplitMix64 rng(12345);
  std::vector<double> v(500);
  for (auto& x : v) x = rng.uniform();
  const auto r = ks_normality_test(v);
  EXPECT_NEAR(r.statistic, 0.07292482832482278, 1e-12);
  EXPECT_NEAR(r.p_value, 0.009804796998077446, 1e-9);
}

TEST(KsNormalityTest, NormalSampleIsAccepted) {
  SplitMix64 rng(777);
  std::vector<double> v(300);
  for (auto& x : v) x = rng.normal();
  const auto r = ks_normality_test(v);
  EXPECT_NEAR(r.statistic, 0.03145597919327625, 1e-12);
  EXPECT_NEAR(r.p_value, 0.9279106646343908, 1e-9);
}

TEST(KsNormalityTest, Errors) {
  try {
    ks_normality_test(std::vector<double>{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
  }
  try {
    ks_normality_test(std::vector<double>(10, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
}

TEST(PairedTTest, MatchesHighPrecisionReference) {
  {
    SplitMix64 rng(2024);
    std::vector<double> x(30), y(30);
    for (int i = 0; i < 30; ++i) {
      x[i] = 10.0 + 0.1 * i;
      y[i] = x[i] + rng.normal();
    }
    const auto r = paired_t(x, y);
    EXPECT_NEAR(r.t, -0.81873850130665994, 1e-12);
    EXPECT_NEAR(r.p_two_sided, 0.41961303787449279, 1e-12);
    EXPECT_EQ(r.df, 29u);
  }
  {
    const std::vector<double> x(5, 0.0);
    const std::vector<double> y{1.1, 0.9, 1.0, 1.2, 0.8};
    const auto r = paired_t(x, y);
    EXPECT_NEAR(r.t, 14.142135623730952, 1e-10);
    EXPECT_NEAR(r.p_two_sided, 0.00014512817061319754, 1e-14);
  }
  {
    SplitMix64 rng(99);
    std::vector<double> x(20, 0.0), y(20);
    for (auto& v : y) v = 0.3 + rng.normal();
    const auto r = paired_t(x, y);
    EXPECT_NEAR(r.t, 1.6508918088087106, 1e-12);
    EXPECT_NEAR(r.p_two_sided, 0.11519335636835717, 1e-12);
  }
}

TEST(PairedTTest, AntisymmetricAndErrors) {
  SplitMix64 rng(3);
  std::vector<double> x(12), y(12);
  for (int i = 0; i < 12; ++i) {
    x[i] = rng.normal();
    y[i] = rng.normal() + 0.5;
  }
  const auto a = paired_t(x, y), b = paired_t(y, x);
  EXPECT_DOUBLE_EQ(a.t, -b.t);
  EXPECT_DOUBLE_EQ(a.p_two_sided, b.p_two_sided);

  EXPECT_THROW(paired_t(std::vector<double>{1}, std::vector<double>{2}), Error);
  EXPECT_THROW(paired_t(std::vector<double>{1, 2}, std::vector<double>{2}), Error);
  try {
    paired_t(std::vector<double>{1, 2, 3}, std::vector<double>{2, 3, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
}

TEST(WilcoxonTest, ExactEqualsFullEnumeration) {
  SplitMix64 rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = 0.0;
      // Coarse values make ties and zero differences common.
      y[i] = trial % 2 ? std::round(rng.normal() * 3.0) : rng.normal() + 0.3;
    }
    const auto oracle = testing::enumerate_wilcoxon(x, y);
    if (oracle.n == 0) continue;
    const auto r = wilcoxon_signed_rank(x, y, WilcoxonMethod::kExact);
    EXPECT_EQ(r.n_effective, oracle.n);
    EXPECT_DOUBLE_EQ(r.w_plus, oracle.w_plus);
    EXPECT_NEAR(r.p_two_sided, oracle.p_two_sided, 1e-12) << "trial " << trial;
    EXPECT_TRUE(r.exact);
  }
}

TEST(WilcoxonTest, NormalApproximationClosedForm) {
  std::vector<double> x(25, 0.0), y(25);
  for (int i = 0; i < 25; ++i) y[i] = i + 1.0;
  const auto r = wilcoxon_signed_rank(x, y);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.w_plus, 325.0);
  EXPECT_EQ(r.w, 0.0);
  const double mean = 25.0 * 26.0 / 4.0;
  const double sd = std::sqrt(25.0 * 26.0 * 51.0 / 24.0);
  const double z = (325.0 - mean - 0.5) / sd;
  EXPECT_NEAR(r.p_two_sided, std::erfc(z / std::sqrt(2.0)), 1e-12);
}

TEST(WilcoxonTest, NormalApproximationTieCorrection) {
  // 24 differences with |d| in 12 tied pairs.
  std::vector<double> x(24, 0.0), y(24);
  for (int i = 0; i < 24; ++i) y[i] = (i / 2 + 1) * (i % 5 == 0 ? -1.0 : 1.0);
  const auto r = wilcoxon_signed_rank(x, y, WilcoxonMethod::kNormal);
  double w_plus = 0.0;
  for (int i = 0; i < 24; ++i) {
    if (y[i] > 0) w_plus += 2.0 * (i / 2) + 1.5;  // average of ranks 2k+1, 2k+2
  }
  EXPECT_DOUBLE_EQ(r.w_plus, w_plus);
  const double n = 24.0;
  const double var = n * (n + 1) * (2 * n + 1) / 24.0 - 12.0 * (8.0 - 2.0) / 48.0;
  const double w = std::min(w_plus, n * (n + 1) / 2 - w_plus);
  const double z = (n * (n + 1) / 4.0 - w - 0.5) / std::sqrt(var);
  EXPECT_NEAR(r.p_two_sided, std::erfc(z / std::sqrt(2.0)), 1e-12);
}

TEST(WilcoxonTest, AllZeroIsDegenerate) {
  try {
    wilcoxon_signed_rank(std::vector<double>{1, 2}, std::vector<double>{1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
}

TEST(SignificanceTest, Thresholds) {
  EXPECT_EQ(significance_from_p(0.0009), Significance::kP001);
  EXPECT_EQ(significance_from_p(0.001), Significance::kP05);
  EXPECT_EQ(significance_from_p(0.0499), Significance::kP05);
  EXPECT_EQ(significance_from_p(0.05), Significance::kNone);
}

TEST(TechnicalGateTest, ComparesAtPrintedResolution) {
  EXPECT_FALSE(technically_significant(0.04, 0.05));
  EXPECT_FALSE(technically_significant(0.05, 0.05));
  EXPECT_FALSE(technically_significant(0.0503, 0.05));
  EXPECT_FALSE(technically_significant(-0.0497, 0.05));
  EXPECT_TRUE(technically_significant(0.0556, 0.05));
  EXPECT_TRUE(technically_significant(-0.28, 0.05));
  EXPECT_TRUE(technically_significant(0.04, 0.03));
}

TEST(AlignPairsTest, BlockAveragesValenceFrames) {
  const std::vector<double> b{1, 2};
  const std::vector<double> v{1, 3, 5, 7, 9, 11, 13, 15};
  const auto p = align_pairs(b, v, PairingPolicy::kBlock);
  EXPECT_EQ(p.applied, PairingPolicy::kBlock);
  EXPECT_EQ(p.valence, (std::vector<double>{4, 12}));
  EXPECT_EQ(p.baseline, b);
}

TEST(AlignPairsTest, FallsBackToTruncate) {
  const std::vector<double> b{1, 2, 3};
  const std::vector<double> v{5, 6, 7, 8};
  const auto p = align_pairs(b, v, PairingPolicy::kBlock);
  EXPECT_EQ(p.applied, PairingPolicy::kTruncate);
  EXPECT_EQ(p.valence, (std::vector<double>{5, 6, 7}));
  EXPECT_THROW(align_pairs(std::vector<double>{}, v, PairingPolicy::kBlock), Error);
}

RoiSeries series(Quantity q, SetLabel set, std::vector<double> v) {
  return RoiSeries{RoiName::kNose, q, set, std::move(v)};
}

TEST(ClassifyTest, NormalShiftUsesPairedT) {
  SplitMix64 rng(11);
  std::vector<double> b(60), v(240);
  for (auto& x : b) x = 34.46 + 0.01 * rng.normal();
  for (auto& x : v) x = 34.18 + 0.01 * rng.normal();
  const auto r = classify_significance(series(Quantity::kTemperature, SetLabel::kBaseline, b),
                                       series(Quantity::kTemperature, SetLabel::kNegative, v));
  EXPECT_EQ(r.test_used, TestKind::kPairedT);
  EXPECT_EQ(r.n_pairs, 60u);
  EXPECT_EQ(r.pairing, PairingPolicy::kBlock);
  ASSERT_TRUE(r.normality_p.has_value());
  EXPECT_GE(*r.normality_p, 0.05);
  EXPECT_EQ(r.significance, Significance::kP001);
  EXPECT_TRUE(r.technically_significant);
  EXPECT_TRUE(r.significant);
  EXPECT_NEAR(r.delta_abs, -0.28, 0.01);
}

TEST(ClassifyTest, SkewedDifferencesUseWilcoxon) {
  SplitMix64 rng(12);
  std::vector<double> b(40, 5.0), v(40);
  for (auto& x : v) x = 5.0 + std::exp(3.0 * rng.normal());
  const auto r = classify_significance(series(Quantity::kPerfusion, SetLabel::kBaseline, b),
                                       series(Quantity::kPerfusion, SetLabel::kPositive, v));
  EXPECT_EQ(r.test_used, TestKind::kWilcoxon);
  EXPECT_LT(*r.normality_p, 0.05);
  EXPECT_TRUE(r.technically_significant);  // no gate for perfusion
  EXPECT_TRUE(r.significant);
}

TEST(ClassifyTest, SmallChangeIsGatedButStillStatistical) {
  SplitMix64 rng(13);
  std::vector<double> b(60), v(240);
  for (auto& x : b) x = 34.83 + 0.002 * rng.normal();
  for (auto& x : v) x = 34.87 + 0.002 * rng.normal();
  const auto r = classify_significance(series(Quantity::kTemperature, SetLabel::kBaseline, b),
                                       series(Quantity::kTemperature, SetLabel::kPositive, v));
  EXPECT_EQ(r.significance, Significance::kP001);
  EXPECT_FALSE(r.technically_significant);
  EXPECT_FALSE(r.significant);
}

TEST(ClassifyTest, FewPairsSkipNormality) {
  const auto r = classify_significance(
      series(Quantity::kTemperature, SetLabel::kBaseline, {1, 2, 3, 4}),
      series(Quantity::kTemperature, SetLabel::kNegative, {2, 3.5, 3.2, 5.9}));
  EXPECT_EQ(r.test_used, TestKind::kWilcoxon);
  EXPECT_FALSE(r.normality_p.has_value());
  EXPECT_FALSE(r.diagnostic.empty());
}

TEST(ClassifyTest, IdenticalSeriesReportNothing) {
  const std::vector<double> same(20, 34.0);
  const auto r = classify_significance(series(Quantity::kTemperature, SetLabel::kBaseline, same),
                                       series(Quantity::kTemperature, SetLabel::kNegative, same));
  EXPECT_EQ(r.significance, Significance::kNone);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_FALSE(r.significant);
  EXPECT_FALSE(r.diagnostic.empty());
}

}  // namespace
}  // namespace thermoperf
