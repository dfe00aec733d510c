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

// Whole-session pipeline: segment every frame, invert it to perfusion, take
// per-frame ROI means, then summarise, difference and test each ROI.

#ifndef THERMOPERF_ANALYSIS_HPP_
#define THERMOPERF_ANALYSIS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "thermoperf/core.hpp"
#include "thermoperf/io.hpp"
#include "thermoperf/report.hpp"
#include "thermoperf/roi.hpp"

namespace thermoperf {

// Model constants for a session: the published defaults, the settings'
// variant and scale, and the recorded room temperature.
ModelParameters session_parameters(const AnalysisSettings& settings,
                                   const Environment& environment);

struct FrameMeasurement {
  SetLabel set = SetLabel::kBaseline;
  std::size_t index = 0;            // position within the set
  std::size_t face_pixels = 0;
  std::size_t singular_pixels = 0;
  std::vector<double> temperature;  // one per ROI, in RoiSet order
  std::vector<double> perfusion;
};

// Segments, inverts and measures one frame.
FrameMeasurement measure_frame(const ThermalFrame& frame, const RoiSet& rois,
                               const AnalysisSettings& settings, const ModelParameters& params);

struct SessionAnalysis {
  std::string subject_id;
  RoiSet rois;
  std::vector<FrameMeasurement> frames;  // baseline, negative, positive order
  std::vector<RoiSeries> series;
  ResultTable temperature;
  ResultTable perfusion;
  std::vector<std::string> warnings;
};

// Frames are measured in parallel when threads > 1; every reduction runs
// sequentially afterwards, so the result does not depend on `threads`.
SessionAnalysis analyze_session(const SessionData& data, const AnalysisSettings& settings,
                                std::size_t threads = 1);

// File name -> contents of every report artifact.
using ReportBundle = std::map<std::string, std::string>;

ReportBundle render_report_bundle(const SessionAnalysis& analysis,
                                  const AnalysisSettings& settings);
void write_report_bundle(const ReportBundle& bundle, const std::filesystem::path& dir);

}  // namespace thermoperf

#endif  // THERMOPERF_ANALYSIS_HPP_
