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

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "thermoperf/parallel.hpp"
#include "thermoperf/report.hpp"

namespace thermoperf {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void spec_error(const std::string& what) {
  throw Error(ErrorKind::kSpec, "synth spec: " + what);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

bool Ellipse::contains(double row, double col) const {
  const double dr = (row - center_row) / semi_rows;
  const double dc = (col - center_col) / semi_cols;
  return dr * dr + dc * dc <= 1.0;
}

Ellipse default_face_ellipse(std::size_t width, std::size_t height) {
  const auto w = static_cast<double>(width);
  const auto h = static_cast<double>(height);
  return Ellipse{(h - 1.0) / 2.0, (w - 1.0) / 2.0, 0.42 * h, 0.24 * w};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t set, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64((set << 32) ^ index));
}

SynthFrame synth_frame(const SynthFrameSpec& spec, std::size_t timestamp_index) {
  const auto& e = spec.ellipse;
  if (spec.width == 0 || spec.height == 0) spec_error("frame dimensions must be positive");
  if (!(e.semi_rows > 0.0 && e.semi_cols > 0.0) || e.center_row - e.semi_rows < 0.0 ||
      e.center_col - e.semi_cols < 0.0 ||
      e.center_row + e.semi_rows > static_cast<double>(spec.height - 1) ||
      e.center_col + e.semi_cols > static_cast<double>(spec.width - 1)) {
    spec_error("face ellipse must lie inside the frame");
  }
  if (!(spec.noise_sd >= 0.0)) spec_error("noise sd must be non-negative");

  const std::size_t w = spec.width;
  std::vector<double> values(w * spec.height, spec.background_c);
  std::vector<std::uint8_t> truth(values.size(), 0);
  for (std::size_t r = 0; r < spec.height; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      if (e.contains(static_cast<double>(r), static_cast<double>(c))) {
        values[r * w + c] = spec.face_c;
        truth[r * w + c] = 1;
      }
    }
  }
  for (const auto& patch : spec.patches) {
    const auto& rect = patch.rect;
    const double r0 = static_cast<double>(rect.row);
    const double c0 = static_cast<double>(rect.col);
    const double r1 = static_cast<double>(rect.row + rect.rows - 1);
    const double c1 = static_cast<double>(rect.col + rect.cols - 1);
    if (rect.rows == 0 || rect.cols == 0 || !e.contains(r0, c0) || !e.contains(r0, c1) ||
        !e.contains(r1, c0) || !e.contains(r1, c1)) {
      std::ostringstream os;
      os << "ROI patch at row " << rect.row << ", col " << rect.col << " (" << rect.rows << "x"
         << rect.cols << ") is not inside the face ellipse";
      spec_error(os.str());
    }
    for (std::size_t r = rect.row; r < rect.row + rect.rows; ++r) {
      for (std::size_t c = rect.col; c < rect.col + rect.cols; ++c) values[r * w + c] = patch.celsius;
    }
  }
  if (spec.noise_sd > 0.0) {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, spec.noise_sd);
    for (double& v : values) v += noise(rng);
  }
  return SynthFrame{ThermalFrame(w, spec.height, std::move(values), timestamp_index),
                    FaceMask(w, spec.height, std::move(truth))};
}

SynthSessionSpec parse_synth_spec(const json& doc) {
  if (!doc.is_object()) spec_error("top level must be an object");
  SynthSessionSpec s;
  try {
    s.subject_id = doc.value("subject_id", s.subject_id);
    s.width = doc.value("width", s.width);
    s.height = doc.value("height", s.height);
    s.background_c = doc.value("background_c", s.background_c);
    s.face_c = doc.value("face_c", s.face_c);
    s.noise_sd = doc.value("noise_sd", s.noise_sd);
    s.seed = doc.value("seed", s.seed);
    if (auto it = doc.find("ellipse"); it != doc.end()) {
      s.ellipse = Ellipse{it->at("center_row").get<double>(), it->at("center_col").get<double>(),
                          it->at("semi_rows").get<double>(), it->at("semi_cols").get<double>()};
    }
    if (auto it = doc.find("set_sizes"); it != doc.end()) {
      s.baseline_frames = it->value("baseline", s.baseline_frames);
      s.negative_frames = it->value("negative", s.negative_frames);
      s.positive_frames = it->value("positive", s.positive_frames);
    }
    const auto roi_map = [](const json& obj, std::map<RoiName, double>& out) {
      for (const auto& [key, value] : obj.items()) out[parse_roi_name(key)] = value.get<double>();
    };
    if (auto it = doc.find("baseline_roi_c"); it != doc.end()) roi_map(*it, s.baseline_roi_c);
    if (auto it = doc.find("deltas"); it != doc.end()) {
      if (auto n = it->find("negative"); n != it->end()) roi_map(*n, s.negative_delta_c);
      if (auto p = it->find("positive"); p != it->end()) roi_map(*p, s.positive_delta_c);
    }
    if (auto it = doc.find("format"); it != doc.end()) {
      const auto f = it->get<std::string>();
      if (f == "csv") {
        s.format = FrameFormat::kCsv;
      } else if (f == "binary" || f == "tpf") {
        s.format = FrameFormat::kBinary;
      } else {
        spec_error("format must be 'csv' or 'binary'");
      }
    }
    if (auto it = doc.find("rois"); it != doc.end()) s.rois = parse_roi_list(*it);
    s.settings = parse_analysis_settings(doc);
  } catch (const json::exception& e) {
    spec_error(e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kSpec) throw;
    std::string msg = e.what();
    if (msg.rfind("manifest: ", 0) == 0) msg.erase(0, 10);
    spec_error(msg);
  }
  if (s.baseline_frames == 0 || s.negative_frames == 0 || s.positive_frames == 0) {
    spec_error("every set needs at least one frame");
  }
  return s;
}

namespace {

struct SetPlan {
  SetLabel label;
  std::size_t frames;
  const std::map<RoiName, double>* deltas;
};

std::string frame_name(std::size_t index, FrameFormat format) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%04zu.%s", index, format == FrameFormat::kBinary ? "tpf" : "csv");
  return buf;
}

}  // namespace

SynthSessionResult synth_session(const SynthSessionSpec& spec, const fs::path& dir,
                                 std::size_t threads) {
  SynthFrameSpec base;
  base.width = spec.width;
  base.height = spec.height;
  base.background_c = spec.background_c;
  base.face_c = spec.face_c;
  base.ellipse = spec.ellipse.value_or(default_face_ellipse(spec.width, spec.height));
  base.noise_sd = 0.0;
  // Noise-free reference frame; validates the geometry before anything is written.
  const SynthFrame reference = synth_frame(base);

  RoiSet rois;
  try {
    rois = spec.rois.empty() ? default_roi_layout(reference.truth) : RoiSet(spec.rois);
    rois.validate(spec.width, spec.height);
  } catch (const Error& e) {
    spec_error(e.what());
  }
  for (const auto* deltas : {&spec.baseline_roi_c, &spec.negative_delta_c, &spec.positive_delta_c}) {
    for (const auto& [name, value] : *deltas) {
      const RoiEntry* entry = rois.find(name);
      if (!entry || !entry->rect) {
        spec_error("ROI " + std::string(to_string(name)) + " cannot carry a patch");
      }
    }
  }

  const SetPlan plans[] = {
      {SetLabel::kBaseline, spec.baseline_frames, nullptr},
      {SetLabel::kNegative, spec.negative_frames, &spec.negative_delta_c},
      {SetLabel::kPositive, spec.positive_frames, &spec.positive_delta_c},
  };

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());

  SessionManifest manifest;
  manifest.subject_id = spec.subject_id;
  manifest.environment.ambient_c = spec.background_c;
  manifest.rois.assign(rois.entries().begin(), rois.entries().end());
  manifest.settings = spec.settings;
  manifest.seed = spec.seed;

  json truth_rois = json::array();
  std::map<RoiName, json> per_roi;
  json total_face = json::object();

  for (std::size_t set_index = 0; set_index < 3; ++set_index) {
    const SetPlan& plan = plans[set_index];
    SynthFrameSpec frame_spec = base;
    for (const auto& entry : rois.entries()) {
      if (!entry.rect) continue;
      const auto b = spec.baseline_roi_c.find(entry.name);
      double delta = 0.0;
      bool touched = b != spec.baseline_roi_c.end() || spec.negative_delta_c.count(entry.name) ||
                     spec.positive_delta_c.count(entry.name);
      if (plan.deltas) {
        if (auto d = plan.deltas->find(entry.name); d != plan.deltas->end()) delta = d->second;
      }
      if (!touched) continue;
      const double level = (b != spec.baseline_roi_c.end() ? b->second : spec.face_c) + delta;
      frame_spec.patches.push_back(RoiPatch{*entry.rect, level});
    }

    const std::string set_name(to_string(plan.label));
    const fs::path set_dir = dir / set_name;
    fs::create_directories(set_dir, ec);
    if (ec) throw Error(ErrorKind::kIo, "cannot create " + set_dir.string() + ": " + ec.message());

    parallel_for(plan.frames, threads, [&](std::size_t i) {
      SynthFrameSpec s = frame_spec;
      s.noise_sd = spec.noise_sd;
      s.seed = derive_seed(spec.seed, set_index, i);
      write_frame(set_dir / frame_name(i, spec.format), synth_frame(s, i).frame, spec.format);
    });

    FrameSource source;
    source.directory = set_name;
    (plan.label == SetLabel::kBaseline   ? manifest.baseline
     : plan.label == SetLabel::kNegative ? manifest.negative
                                         : manifest.positive) = source;

    // Ground truth from the noise-free version of this set's frames.
    const SynthFrame clean = synth_frame(frame_spec);
    for (const auto& entry : rois.entries()) {
      const double mean = roi_mean(clean.frame, entry, clean.truth);
      if (entry.rect) {
        per_roi[entry.name][set_name + "_c"] = mean;
      } else {
        total_face[set_name + "_c"] = mean;
      }
    }
  }

  for (const auto& entry : rois.entries()) {
    json& r = entry.rect ? per_roi[entry.name] : total_face;
    r["name"] = std::string(to_string(entry.name));
    r["delta_negative_c"] = r["negative_c"].get<double>() - r["baseline_c"].get<double>();
    r["delta_positive_c"] = r["positive_c"].get<double>() - r["baseline_c"].get<double>();
    truth_rois.push_back(r);
  }

  json truth{
      {"subject_id", spec.subject_id},
      {"seed", spec.seed},
      {"noise_sd_c", spec.noise_sd},
      {"background_c", spec.background_c},
      {"face_c", spec.face_c},
      {"set_sizes",
       {{"baseline", spec.baseline_frames},
        {"negative", spec.negative_frames},
        {"positive", spec.positive_frames}}},
      {"face_pixels", reference.truth.count()},
      {"rois", truth_rois},
  };

  SynthSessionResult result;
  result.manifest_path = dir / "manifest.json";
  result.ground_truth_path = dir / "ground_truth.json";
  result.ground_truth = truth;
  write_text_file(result.manifest_path, manifest_to_json(manifest).dump(2) + "\n");
  write_text_file(result.ground_truth_path, truth.dump(2) + "\n");
  return result;
}

}  // namespace thermoperf
