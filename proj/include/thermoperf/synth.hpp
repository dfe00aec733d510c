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

// Synthetic thermal sessions with known ground truth.
//
// A frame is a warm ellipse (the face) on an ambient background, with flat
// temperature patches over chosen ROIs, plus i.i.d. Gaussian sensor noise on
// every pixel. Each frame draws from its own stream derived from
// (seed, set, index), so output is identical however frames are scheduled.

#ifndef THERMOPERF_SYNTH_HPP_
#define THERMOPERF_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "json.hpp"
#include "thermoperf/core.hpp"
#include "thermoperf/io.hpp"
#include "thermoperf/roi.hpp"

namespace thermoperf {

// Matches the camera's noise-equivalent temperature difference.
inline constexpr double kDefaultNoiseSdC = 0.03;

struct Ellipse {
  double center_row = 0.0;
  double center_col = 0.0;
  double semi_rows = 1.0;
  double semi_cols = 1.0;

  bool contains(double row, double col) const;
};

// Centred ellipse covering most of a width x height frame.
Ellipse default_face_ellipse(std::size_t width, std::size_t height);

struct RoiPatch {
  RoiRect rect;
  double celsius = 0.0;
};

struct SynthFrameSpec {
  std::size_t width = 640;
  std::size_t height = 480;
  double background_c = 24.0;
  Ellipse ellipse = default_face_ellipse(640, 480);
  double face_c = 34.0;
  std::vector<RoiPatch> patches;  // applied in order, before noise
  double noise_sd = kDefaultNoiseSdC;
  std::uint64_t seed = 0;
};

struct SynthFrame {
  ThermalFrame frame;
  FaceMask truth;  // ellipse interior
};

// Throws kSpec when the ellipse leaves the frame, a patch is not fully
// inside the ellipse, or noise_sd < 0.
SynthFrame synth_frame(const SynthFrameSpec& spec, std::size_t timestamp_index = 0);

// Per-frame stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t set, std::uint64_t index);

struct SynthSessionSpec {
  std::string subject_id = "synthetic";
  std::size_t width = 640;
  std::size_t height = 480;
  double background_c = 24.0;
  std::optional<Ellipse> ellipse;   // default_face_ellipse when empty
  double face_c = 34.0;
  std::vector<RoiEntry> rois;       // default_roi_layout of the ellipse when empty
  std::map<RoiName, double> baseline_roi_c;
  std::map<RoiName, double> negative_delta_c;
  std::map<RoiName, double> positive_delta_c;
  std::size_t baseline_frames = kNominalBaselineFrames;
  std::size_t negative_frames = kNominalValenceFrames;
  std::size_t positive_frames = kNominalValenceFrames;
  double noise_sd = kDefaultNoiseSdC;
  std::uint64_t seed = 0;
  FrameFormat format = FrameFormat::kCsv;
  AnalysisSettings settings;
};

// Throws kSpec with a "synth spec: ..." diagnostic.
SynthSessionSpec parse_synth_spec(const nlohmann::json& document);

struct SynthSessionResult {
  std::filesystem::path manifest_path;
  std::filesystem::path ground_truth_path;
  nlohmann::json ground_truth;
};

// Writes <dir>/{baseline,negative,positive}/frame_NNNN.{csv,tpf},
// <dir>/manifest.json and <dir>/ground_truth.json.
SynthSessionResult synth_session(const SynthSessionSpec& spec, const std::filesystem::path& dir,
                                 std::size_t threads = 1);

}  // namespace thermoperf

#endif  // THERMOPERF_SYNTH_HPP_
