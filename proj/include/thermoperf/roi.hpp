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

// ROI time series and the valence-versus-baseline differences.
//
// Averaging happens in two stages: one mean per frame per ROI, then mean and
// sample standard deviation across the frames of a set.

#ifndef THERMOPERF_ROI_HPP_
#define THERMOPERF_ROI_HPP_

#include <span>
#include <string_view>
#include <vector>

#include "thermoperf/core.hpp"

namespace thermoperf {

enum class Quantity { kTemperature, kPerfusion };
std::string_view to_string(Quantity quantity);

enum class Valence { kNegative, kPositive };
std::string_view to_string(Valence valence);
SetLabel set_label(Valence valence);

struct RoiSeries {
  RoiName roi = RoiName::kNose;
  Quantity quantity = Quantity::kTemperature;
  SetLabel set = SetLabel::kBaseline;
  std::vector<double> values;
};

struct SetSummary {
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator; 0 for a single sample
};

struct DiffResult {
  RoiName roi = RoiName::kNose;
  Quantity quantity = Quantity::kTemperature;
  Valence valence = Valence::kNegative;
  double mean_baseline = 0.0;
  double mean_valence = 0.0;
  double sd_baseline = 0.0;
  double sd_valence = 0.0;
  double delta_abs = 0.0;
  double delta_pct = 0.0;
};

// Rect ROIs average their pixels; TOTAL_FACE averages mask-true pixels.
// Throws kEmptyRoi when nothing remains to average and kRange when a rect
// leaves the frame.
double roi_mean(const ThermalFrame& frame, const RoiEntry& roi, const FaceMask& mask);

// As above; flagged (singular) pixels are excluded from the mean, and so are
// background pixels when the frame was computed under a mask.
double roi_mean(const PerfusionFrame& frame, const RoiEntry& roi, const FaceMask& mask);

// Throws kInvalidInput on an empty series.
SetSummary set_average(std::span<const double> values);
inline SetSummary set_average(const RoiSeries& series) { return set_average(series.values); }

// delta_abs = valence - baseline; delta_pct = delta_abs / baseline * 100.
// Throws kUndefinedPercentage when the baseline mean is zero.
DiffResult diff_pair(const SetSummary& baseline, const SetSummary& valence, RoiName roi,
                     Quantity quantity, Valence valence_label);

// Proposes a ROI layout from the bounding box of the face mask. Left/right
// refer to the subject, who faces the camera: the subject's right side is on
// the image's left. Throws kRange when the layout does not fit the frame.
RoiSet default_roi_layout(const FaceMask& mask);

// Same layout from an explicit bounding box (top, left, rows, cols).
RoiSet default_roi_layout(std::size_t top, std::size_t left, std::size_t rows, std::size_t cols,
                          std::size_t frame_width, std::size_t frame_height);

}  // namespace thermoperf

#endif  // THERMOPERF_ROI_HPP_
