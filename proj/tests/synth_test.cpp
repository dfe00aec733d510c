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

#include "thermoperf/synth.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "gtest/gtest.h"
#include "thermoperf/segmentation.hpp"

namespace thermoperf {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

SynthFrameSpec small_spec() {
  SynthFrameSpec s;
  s.width = 80;
  s.height = 60;
  s.ellipse = default_face_ellipse(80, 60);
  return s;
}

TEST(SynthFrameTest, NoiseFreeFrameHasTwoValuesAndIsSegmentedExactly) {
  auto spec = small_spec();
  spec.noise_sd = 0.0;
  const auto out = synth_frame(spec);
  std::set<double> values(out.frame.data().begin(), out.frame.data().end());
  EXPECT_EQ(values, (std::set<double>{24.0, 34.0}));
  EXPECT_EQ(segment_face(out.frame), out.truth);
  EXPECT_GT(out.truth.count(), 0u);
}

TEST(SynthFrameTest, PatchSetsRoiMeanExactly) {
  auto spec = small_spec();
  spec.noise_sd = 0.0;
  const RoiRect rect{28, 36, 6, 6};
  spec.patches.push_back({rect, 34.46});
  const auto out = synth_frame(spec);
  EXPECT_EQ(roi_mean(out.frame, RoiEntry{RoiName::kNose, rect}, out.truth), 34.46);
}

TEST(SynthFrameTest, SameSeedSameBits) {
  auto spec = small_spec();
  spec.seed = 77;
  EXPECT_EQ(synth_frame(spec).frame, synth_frame(spec).frame);
  auto other = spec;
  other.seed = 78;
  EXPECT_NE(synth_frame(spec).frame, synth_frame(other).frame);
}

TEST(SynthFrameTest, NoiseHasRequestedSpread) {
  auto spec = small_spec();
  spec.width = spec.height = 200;
  spec.ellipse = default_face_ellipse(200, 200);
  spec.noise_sd = 0.03;
  const auto out = synth_frame(spec);
  double sum = 0, sum2 = 0, n = 0;
  const auto bits = out.truth.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) continue;
    const double d = out.frame.data()[i] - 24.0;
    sum += d;
    sum2 += d * d;
    n += 1;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.002);
  EXPECT_NEAR(std::sqrt(sum2 / n), 0.03, 0.002);
}

TEST(SynthFrameTest, SpecErrors) {
  auto spec = small_spec();
  spec.patches.push_back({RoiRect{0, 0, 4, 4}, 35.0});  // corner is background
  try {
    synth_frame(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSpec);
  }
  spec = small_spec();
  spec.noise_sd = -1.0;
  EXPECT_THROW(synth_frame(spec), Error);
  spec = small_spec();
  spec.ellipse.semi_cols = 100.0;
  EXPECT_THROW(synth_frame(spec), Error);
}

TEST(DeriveSeedTest, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t set = 0; set < 3; ++set) {
    for (std::uint64_t i = 0; i < 300; ++i) seen.insert(derive_seed(42, set, i));
  }
  EXPECT_EQ(seen.size(), 900u);
  EXPECT_EQ(derive_seed(42, 1, 5), derive_seed(42, 1, 5));
}

TEST(SynthSpecTest, ParsesAndReportsErrors) {
  const auto s = parse_synth_spec(json::parse(R"({
    "subject_id": "syn", "width": 320, "height": 240, "noise_sd": 0.01, "seed": 5,
    "baseline_roi_c": {"NOSE": 34.46},
    "deltas": {"negative": {"NOSE": -0.28}, "positive": {"RIGHT_UPPER_LIP": 0.05}},
    "set_sizes": {"baseline": 6, "negative": 24, "positive": 24},
    "format": "binary", "model": {"variant": "table"}, "pairing": "truncate"
  })"));
  EXPECT_EQ(s.width, 320u);
  EXPECT_EQ(s.baseline_roi_c.at(RoiName::kNose), 34.46);
  EXPECT_EQ(s.negative_delta_c.at(RoiName::kNose), -0.28);
  EXPECT_EQ(s.positive_delta_c.at(RoiName::kRightUpperLip), 0.05);
  EXPECT_EQ(s.negative_frames, 24u);
  EXPECT_EQ(s.format, FrameFormat::kBinary);
  EXPECT_EQ(s.settings.variant, ModelVariant::kTableConsistent);
  EXPECT_EQ(s.settings.pairing, PairingPolicy::kTruncate);

  for (const char* bad : {R"({"format": "png"})", R"({"baseline_roi_c": {"CHIN": 1}})",
                          R"({"set_sizes": {"baseline": 0}})", R"({"width": "wide"})",
                          R"({"rois": [{"name": "NOSE"}]})"}) {
    try {
      parse_synth_spec(json::parse(bad));
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kSpec) << bad;
      EXPECT_EQ(std::string(e.what()).rfind("synth spec: ", 0), 0u) << e.what();
    }
  }
}

class SynthSessionTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "thermoperf_synth_session";
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

SynthSessionSpec session_spec() {
  SynthSessionSpec s;
  s.width = 320;
  s.height = 240;
  s.baseline_frames = 3;
  s.negative_frames = 6;
  s.positive_frames = 6;
  s.seed = 9;
  s.baseline_roi_c[RoiName::kNose] = 34.46;
  s.negative_delta_c[RoiName::kNose] = -0.28;
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

TEST_F(SynthSessionTest, WritesLoadableSessionWithGroundTruth) {
  const auto r = synth_session(session_spec(), dir_);
  EXPECT_TRUE(fs::exists(dir_ / "baseline" / "frame_0000.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "negative" / "frame_0005.csv"));
  const auto session = load_session(r.manifest_path);
  EXPECT_EQ(session.data.baseline.size(), 3u);
  EXPECT_EQ(session.data.positive.size(), 6u);
  EXPECT_EQ(session.data.roi_set.entries().size(), 9u);
  EXPECT_EQ(session.manifest.seed, 9u);

  const auto truth = json::parse(slurp(r.ground_truth_path));
  bool found = false;
  for (const auto& roi : truth.at("rois")) {
    if (roi.at("name") != "NOSE") continue;
    found = true;
    EXPECT_NEAR(roi.at("baseline_c").get<double>(), 34.46, 1e-12);
    EXPECT_NEAR(roi.at("delta_negative_c").get<double>(), -0.28, 1e-12);
    EXPECT_NEAR(roi.at("delta_positive_c").get<double>(), 0.0, 1e-12);
  }
  EXPECT_TRUE(found);
}

TEST_F(SynthSessionTest, SameSeedSameBytesAnyThreadCount) {
  auto spec = session_spec();
  spec.format = FrameFormat::kBinary;
  synth_session(spec, dir_ / "a", 1);
  synth_session(spec, dir_ / "b", 3);
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir_ / "a")) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir_ / "a");
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "b" / rel)) << rel;
    ++files;
  }
  EXPECT_EQ(files, 3u + 6u + 6u + 2u);
}

TEST_F(SynthSessionTest, PatchOnUnknownRoiIsSpecError) {
  auto spec = session_spec();
  spec.rois = {{RoiName::kNose, RoiRect{120, 150, 10, 10}}};
  spec.baseline_roi_c[RoiName::kForehead] = 35.0;
  try {
    synth_session(spec, dir_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSpec);
  }
}

}  // namespace
}  // namespace thermoperf
