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

// Frame files and session manifests.
//
// Frame CSV: one image row per line, comma-separated degrees Celsius, LF or
// CRLF line ends; lines starting with '#' and blank lines are skipped.
// Values are written with 6 decimals.
//
// Binary frame (.tpf): the 4 bytes "TPF1", width and height as little-endian
// uint32, then width*height little-endian IEEE-754 doubles in row-major order.

#ifndef THERMOPERF_IO_HPP_
#define THERMOPERF_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "thermoperf/core.hpp"
#include "thermoperf/stats.hpp"

namespace thermoperf {

inline constexpr std::string_view kBinaryFrameMagic = "TPF1";
inline constexpr int kCsvDecimals = 6;

enum class FrameFormat { kCsv, kBinary };

// Format by content: the magic bytes mark a binary frame, anything else is
// parsed as CSV. Throws kIo, kFormat (ragged rows, bad cells; message cites
// line and column) or kRange (implausible temperature).
ThermalFrame load_frame(const std::filesystem::path& path, std::size_t timestamp_index = 0);
ThermalFrame parse_frame_csv(std::string_view text, std::size_t timestamp_index = 0);

void write_frame(const std::filesystem::path& path, const ThermalFrame& frame,
                 FrameFormat format = FrameFormat::kCsv);

// Generic row-major grid writers, shared with perfusion output.
void write_grid_csv(const std::filesystem::path& path, std::span<const double> values,
                    std::size_t width, std::size_t height, int decimals = kCsvDecimals,
                    bool scientific = false);
void write_grid_binary(const std::filesystem::path& path, std::span<const double> values,
                       std::size_t width, std::size_t height);

struct FrameSource {
  std::optional<std::string> directory;  // every .csv/.tpf file inside
  std::vector<std::string> files;        // explicit list
};

struct AnalysisSettings {
  ModelVariant variant = ModelVariant::kFull;
  double output_scale = 1.0;
  double sensitivity_threshold = kDefaultSensitivityC;
  std::size_t bin_count = 256;
  PairingPolicy pairing = PairingPolicy::kBlock;
  bool largest_component = false;
};

struct SessionManifest {
  std::string subject_id;
  Environment environment;
  FrameSource baseline;
  FrameSource negative;
  FrameSource positive;
  std::vector<RoiEntry> rois;  // empty: propose a layout from the first mask
  AnalysisSettings settings;
  std::optional<std::uint64_t> seed;
  std::filesystem::path base_dir;  // relative paths resolve against this

  const FrameSource& source(SetLabel label) const;
};

// The "rois" array: {"name", "row", "col", optional "rows"/"cols"}; TOTAL_FACE
// carries only its name. Throws kFormat naming the offending entry.
std::vector<RoiEntry> parse_roi_list(const nlohmann::json& list);
nlohmann::json roi_list_to_json(std::span<const RoiEntry> rois);

// Reads the optional "model" object and "pairing" string of a document.
AnalysisSettings parse_analysis_settings(const nlohmann::json& document);
nlohmann::json analysis_settings_to_json(const AnalysisSettings& settings);

// Throws kFormat with a "manifest: ..." diagnostic naming the offending key.
SessionManifest parse_manifest(const nlohmann::json& document,
                               const std::filesystem::path& base_dir = {});
SessionManifest load_manifest(const std::filesystem::path& path);
nlohmann::json manifest_to_json(const SessionManifest& manifest);

// Resolved, bytewise-sorted frame paths of one set. Throws kSession when a
// set is missing, empty or references a missing file.
std::vector<std::filesystem::path> resolve_frames(const SessionManifest& manifest, SetLabel label);

struct LoadedSession {
  SessionManifest manifest;
  SessionData data;
  std::vector<std::string> warnings;
};

// Loads every frame (in parallel when threads > 1), checks uniform
// dimensions and ROI bounds, and warns when set sizes deviate from the
// nominal 60/240/240.
LoadedSession load_session(const std::filesystem::path& manifest_path, std::size_t threads = 1);

}  // namespace thermoperf

#endif  // THERMOPERF_IO_HPP_
