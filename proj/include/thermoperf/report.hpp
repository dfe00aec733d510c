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

// Result tables, percentage-difference chart data and heatmap images.
//
// Numbers are rounded half away from zero to the printed precision: 2
// decimals for degrees C, 2 decimals for perfusion expressed in units of
// 1e-2 kg/(m^2 s), 2 decimals for percentages. Significance markers are
// '*' (p < 0.05) and '**' (p < 0.001), followed by a down arrow when the
// Wilcoxon test produced the p-value.

#ifndef THERMOPERF_REPORT_HPP_
#define THERMOPERF_REPORT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "thermoperf/core.hpp"
#include "thermoperf/roi.hpp"
#include "thermoperf/stats.hpp"

namespace thermoperf {

struct ValenceResult {
  DiffResult diff;
  TestReport test;
};

struct RoiRow {
  RoiName roi = RoiName::kNose;
  SetSummary baseline;
  std::optional<SetSummary> negative;
  std::optional<SetSummary> positive;
  std::optional<ValenceResult> negative_result;
  std::optional<ValenceResult> positive_result;
};

struct ResultTable {
  std::string subject_id;
  Quantity quantity = Quantity::kTemperature;
  std::vector<RoiRow> rows;
};

struct TableDocument {
  std::string csv;
  std::string markdown;
};

// Rounds half away from zero and prints exactly `decimals` digits; never
// prints a negative zero.
std::string format_fixed(double value, int decimals);

// Multiplier from SI values to the printed unit (1 for C, 100 for
// perfusion printed in 1e-2 kg/(m^2 s)).
double display_factor(Quantity quantity);

// "**", "*" or "", then the Wilcoxon arrow when applicable.
std::string significance_marker(const TestReport& test);

// The pipe-separated data cells of one row: three "mean (sd)" cells, then
// delta+marker and delta % for each valence.
std::string format_row_cells(const RoiRow& row, Quantity quantity);

TableDocument emit_table(const ResultTable& table);

// Left-to-right column order of the percentage chart: the subject's right
// side first, nose and forehead in the middle, left side, then whole face.
std::span<const RoiName> chart_order();

// One CSV row per (subject, valence) with delta % per ROI in chart order.
// Valences without results are omitted.
std::string emit_pct_chart_data(std::span<const ResultTable> tables);

nlohmann::json test_reports_to_json(std::span<const ResultTable> tables);

struct HeatmapRange {
  double lo = 0.0;
  double hi = 1.0;
};

// Fixed 256-entry colour map: linear ramps through black, indigo, magenta,
// orange and white at positions 0, 64, 128, 192 and 255.
const std::array<std::array<std::uint8_t, 3>, 256>& heat_colormap();

// floor((v - lo) / (hi - lo) * 255 + 0.5) clamped to [0, 255].
std::uint8_t gray_level(double value, const HeatmapRange& range);

struct HeatmapImages {
  std::string pgm;  // P5, maxval 255
  std::string ppm;  // P6, colour-mapped
};

// `include` selects the pixels that define an AUTO range (nullopt range);
// empty means every pixel. A degenerate AUTO range maps everything to 0.
// Throws kParameter when an explicit range has hi <= lo.
HeatmapImages render_heatmap(std::span<const double> values, std::size_t width,
                             std::size_t height, std::optional<HeatmapRange> range,
                             std::span<const std::uint8_t> include = {});

// Writes `pgm_path`, plus `ppm_path` when given.
void write_heatmap(const ThermalFrame& frame, std::optional<HeatmapRange> range,
                   const std::filesystem::path& pgm_path,
                   const std::optional<std::filesystem::path>& ppm_path = std::nullopt,
                   const FaceMask* mask = nullptr);
void write_heatmap(const PerfusionFrame& frame, std::optional<HeatmapRange> range,
                   const std::filesystem::path& pgm_path,
                   const std::optional<std::filesystem::path>& ppm_path = std::nullopt,
                   const FaceMask* mask = nullptr);

// Face pixels 255, background 0.
void write_mask_pgm(const FaceMask& mask, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace thermoperf

#endif  // THERMOPERF_REPORT_HPP_
