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

#include "thermoperf/analysis.hpp"

#include <cstdio>
#include <sstream>

#include "thermoperf/parallel.hpp"
#include "thermoperf/perfusion.hpp"
#include "thermoperf/segmentation.hpp"
#include "thermoperf/stats.hpp"

namespace thermoperf {
namespace fs = std::filesystem;
using nlohmann::json;

ModelParameters session_parameters(const AnalysisSettings& settings,
                                   const Environment& environment) {
  ModelParameters p = ModelParameters::defaults(settings.variant);
  p.output_scale = settings.output_scale;
  p.ambient_temp_k = celsius_to_kelvin(Celsius{environment.ambient_c}).value;
  p.validate();
  return p;
}

FrameMeasurement measure_frame(const ThermalFrame& frame, const RoiSet& rois,
                               const AnalysisSettings& settings, const ModelParameters& params) {
  SegmentOptions seg;
  seg.bin_count = settings.bin_count;
  seg.largest_component = settings.largest_component;
  const FaceMask mask = segment_face(frame, seg);
  const PerfusionResult perf = perfuse_frame(frame, mask, params);

  FrameMeasurement m;
  m.index = frame.timestamp_index();
  m.face_pixels = mask.count();
  m.singular_pixels = perf.errors.size();
  m.temperature.reserve(rois.entries().size());
  m.perfusion.reserve(rois.entries().size());
  for (const auto& roi : rois.entries()) {
    m.temperature.push_back(roi_mean(frame, roi, mask));
    m.perfusion.push_back(roi_mean(perf.frame, roi, mask));
  }
  return m;
}

namespace {

constexpr SetLabel kSets[] = {SetLabel::kBaseline, SetLabel::kNegative, SetLabel::kPositive};

std::string frame_context(SetLabel set, std::size_t index) {
  return std::string(to_string(set)) + " frame " + std::to_string(index);
}

}  // namespace

SessionAnalysis analyze_session(const SessionData& data, const AnalysisSettings& settings,
                                std::size_t threads) {
  if (data.roi_set.empty()) throw Error(ErrorKind::kInvalidInput, "session has no ROIs");
  const ModelParameters params = session_parameters(settings, data.environment);

  struct Job {
    SetLabel set;
    std::size_t index;
    const ThermalFrame* frame;
  };
  std::vector<Job> jobs;
  for (SetLabel set : kSets) {
    const auto& frames = data.frames(set);
    if (frames.empty()) {
      throw Error(ErrorKind::kSession, "set " + std::string(to_string(set)) + " has no frames");
    }
    for (std::size_t i = 0; i < frames.size(); ++i) jobs.push_back({set, i, &frames[i]});
  }

  SessionAnalysis out;
  out.subject_id = data.subject_id;
  out.rois = data.roi_set;
  out.frames.resize(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    try {
      FrameMeasurement m = measure_frame(*job.frame, data.roi_set, settings, params);
      m.set = job.set;
      m.index = job.index;
      out.frames[j] = std::move(m);
    } catch (const Error& e) {
      throw Error(e.kind(), frame_context(job.set, job.index) + ": " + e.what());
    }
  });

  for (const auto& m : out.frames) {
    if (m.singular_pixels > 0) {
      out.warnings.push_back(frame_context(m.set, m.index) + ": " +
                             std::to_string(m.singular_pixels) +
                             " face pixels had no defined perfusion and were excluded");
    }
  }

  const auto entries = data.roi_set.entries();
  ClassifyOptions options;
  options.sensitivity_threshold = settings.sensitivity_threshold;
  options.pairing = settings.pairing;

  out.temperature = ResultTable{data.subject_id, Quantity::kTemperature, {}};
  out.perfusion = ResultTable{data.subject_id, Quantity::kPerfusion, {}};
  for (std::size_t r = 0; r < entries.size(); ++r) {
    for (Quantity q : {Quantity::kTemperature, Quantity::kPerfusion}) {
      RoiSeries per_set[3];
      for (std::size_t s = 0; s < 3; ++s) {
        per_set[s].roi = entries[r].name;
        per_set[s].quantity = q;
        per_set[s].set = kSets[s];
      }
      for (const auto& m : out.frames) {
        auto& target = per_set[static_cast<std::size_t>(m.set)];
        target.values.push_back(q == Quantity::kTemperature ? m.temperature[r] : m.perfusion[r]);
      }

      RoiRow row;
      row.roi = entries[r].name;
      row.baseline = set_average(per_set[0]);
      row.negative = set_average(per_set[1]);
      row.positive = set_average(per_set[2]);
      row.negative_result = ValenceResult{
          diff_pair(row.baseline, *row.negative, row.roi, q, Valence::kNegative),
          classify_significance(per_set[0], per_set[1], options)};
      row.positive_result = ValenceResult{
          diff_pair(row.baseline, *row.positive, row.roi, q, Valence::kPositive),
          classify_significance(per_set[0], per_set[2], options)};
      (q == Quantity::kTemperature ? out.temperature : out.perfusion).rows.push_back(row);
      for (auto& s : per_set) out.series.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10e", v);
  return buf;
}

}  // namespace

ReportBundle render_report_bundle(const SessionAnalysis& analysis,
                                  const AnalysisSettings& settings) {
  ReportBundle bundle;
  const TableDocument temp = emit_table(analysis.temperature);
  const TableDocument perf = emit_table(analysis.perfusion);
  bundle["temperature_table.csv"] = temp.csv;
  bundle["temperature_table.md"] = temp.markdown;
  bundle["perfusion_table.csv"] = perf.csv;
  bundle["perfusion_table.md"] = perf.markdown;
  bundle["temperature_pct_chart.csv"] =
      emit_pct_chart_data(std::span<const ResultTable>(&analysis.temperature, 1));
  bundle["perfusion_pct_chart.csv"] =
      emit_pct_chart_data(std::span<const ResultTable>(&analysis.perfusion, 1));

  const ResultTable both[] = {analysis.temperature, analysis.perfusion};
  json reports{
      {"subject", analysis.subject_id},
      {"settings",
       {{"model", analysis_settings_to_json(settings)},
        {"pairing", std::string(to_string(settings.pairing))}}},
      {"tests", test_reports_to_json(both)},
  };
  bundle["test_reports.json"] = reports.dump(2) + "\n";

  const auto entries = analysis.rois.entries();
  std::ostringstream series;
  series << "set,index,face_pixels,singular_pixels";
  for (const auto& e : entries) {
    series << ',' << to_string(e.name) << "_c," << to_string(e.name) << "_perfusion";
  }
  series << '\n';
  for (const auto& m : analysis.frames) {
    series << to_string(m.set) << ',' << m.index << ',' << m.face_pixels << ','
           << m.singular_pixels;
    for (std::size_t r = 0; r < entries.size(); ++r) {
      series << ',' << fixed(m.temperature[r], 9) << ',' << sci(m.perfusion[r]);
    }
    series << '\n';
  }
  bundle["roi_series.csv"] = series.str();
  return bundle;
}

void write_report_bundle(const ReportBundle& bundle, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [name, contents] : bundle) write_text_file(dir / name, contents);
}

}  // namespace thermoperf
