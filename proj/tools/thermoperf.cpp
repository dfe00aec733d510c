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

// thermoperf: segment, perfuse, analyze and synthesize thermal sessions.
//
// Exit status is 0 on success, 2 when a frame cannot be segmented and 1 for
// every other failure. Failures print one "error: ..." line on stderr.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thermoperf/analysis.hpp"
#include "thermoperf/io.hpp"
#include "thermoperf/parallel.hpp"
#include "thermoperf/perfusion.hpp"
#include "thermoperf/report.hpp"
#include "thermoperf/segmentation.hpp"
#include "thermoperf/synth.hpp"

namespace fs = std::filesystem;
using namespace thermoperf;

namespace {

struct ModelFlags {
  std::optional<std::string> variant;
  std::optional<double> scale;
  std::optional<std::size_t> bins;
  std::optional<double> sensitivity;
  std::optional<std::string> pairing;
  bool largest_component = false;

  void apply(AnalysisSettings& s) const {
    if (variant) {
      s.variant = parse_model_variant(*variant);
      s.output_scale = default_output_scale(s.variant);
    }
    if (scale) s.output_scale = *scale;
    if (bins) s.bin_count = *bins;
    if (sensitivity) s.sensitivity_threshold = *sensitivity;
    if (pairing) s.pairing = parse_pairing_policy(*pairing);
    if (largest_component) s.largest_component = true;
  }
};

void add_model_flags(CLI::App& cmd, ModelFlags& f, bool stats_flags) {
  cmd.add_option("--variant", f.variant, "Perfusion model: full | table")
      ->check(CLI::IsMember({"full", "table"}));
  cmd.add_option("--scale", f.scale, "Output scale factor (default: 1 full, 10 table)");
  cmd.add_option("--bins", f.bins, "Otsu histogram bins")->check(CLI::PositiveNumber);
  cmd.add_flag("--largest-component", f.largest_component,
               "Keep only the largest 4-connected face region");
  if (stats_flags) {
    cmd.add_option("--sensitivity", f.sensitivity, "Technical significance threshold, C");
    cmd.add_option("--pairing", f.pairing, "Baseline/valence pairing: block | truncate")
        ->check(CLI::IsMember({"block", "truncate"}));
  }
}

// NAME, NAME:row,col or NAME:row,col,rows,cols.
RoiEntry parse_roi_flag(const std::string& text) {
  const auto colon = text.find(':');
  RoiEntry e{parse_roi_name(text.substr(0, colon)), std::nullopt};
  if (colon == std::string::npos) {
    if (e.name != RoiName::kTotalFace) {
      throw Error(ErrorKind::kParameter, "--roi " + text + ": position required");
    }
    return e;
  }
  std::vector<std::size_t> nums;
  std::string_view rest(text);
  rest.remove_prefix(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    const auto part = rest.substr(0, comma);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw Error(ErrorKind::kParameter, "--roi " + text + ": bad number '" +
                                             std::string(part) + "'");
    }
    nums.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (nums.size() != 2 && nums.size() != 4) {
    throw Error(ErrorKind::kParameter, "--roi " + text + ": expected row,col[,rows,cols]");
  }
  RoiRect r = default_roi_extent(e.name);
  r.row = nums[0];
  r.col = nums[1];
  if (nums.size() == 4) {
    r.rows = nums[2];
    r.cols = nums[3];
  }
  e.rect = r;
  return e;
}

bool is_manifest(const fs::path& p) { return p.extension() == ".json"; }

struct FrameInput {
  fs::path path;
  std::string label;  // output file stem
};

// A frame file, or every frame of a session manifest.
std::vector<FrameInput> frame_inputs(const fs::path& input) {
  if (!is_manifest(input)) return {{input, input.stem().string()}};
  const SessionManifest m = load_manifest(input);
  std::vector<FrameInput> out;
  for (SetLabel set : {SetLabel::kBaseline, SetLabel::kNegative, SetLabel::kPositive}) {
    for (const auto& p : resolve_frames(m, set)) {
      out.push_back({p, (fs::path(std::string(to_string(set))) / p.stem()).string()});
    }
  }
  return out;
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

int cmd_segment(const fs::path& input, const fs::path& out, const ModelFlags& flags,
                std::size_t threads) {
  AnalysisSettings s;
  flags.apply(s);
  SegmentOptions opt{s.bin_count, s.largest_component};
  const auto inputs = frame_inputs(input);
  std::vector<std::string> lines(inputs.size());
  parallel_for(inputs.size(), threads, [&](std::size_t i) {
    const ThermalFrame frame = load_frame(inputs[i].path, i);
    try {
      const OtsuResult otsu = otsu_threshold(frame, s.bin_count);
      const FaceMask mask = segment_face(frame, opt);
      const fs::path dst = out / (inputs[i].label + "_mask.pgm");
      ensure_parent(dst);
      write_mask_pgm(mask, dst);
      lines[i] = inputs[i].label + "," + fmt("%.6f", otsu.threshold) + "," +
                 std::to_string(mask.count());
    } catch (const Error& e) {
      throw Error(e.kind() == ErrorKind::kDegenerate ? ErrorKind::kSegmentation : e.kind(),
                  inputs[i].path.string() + ": " + e.what());
    }
  });
  std::string summary = "frame,threshold_c,face_pixels\n";
  for (const auto& l : lines) summary += l + "\n";
  write_text_file(out / "segment_summary.csv", summary);
  std::cout << "segmented " << inputs.size() << " frame(s) into " << out.string() << "\n";
  return 0;
}

int cmd_perfuse(const fs::path& input, const fs::path& out, const ModelFlags& flags,
                std::optional<double> ambient, const std::string& mask_mode,
                const std::vector<std::string>& roi_flags, bool binary, std::size_t threads) {
  AnalysisSettings s;
  Environment env;
  std::vector<RoiEntry> rois;
  if (is_manifest(input)) {
    const SessionManifest m = load_manifest(input);
    s = m.settings;
    env = m.environment;
    rois = m.rois;
  }
  flags.apply(s);
  if (ambient) env.ambient_c = *ambient;
  if (!roi_flags.empty()) {
    rois.clear();
    for (const auto& r : roi_flags) rois.push_back(parse_roi_flag(r));
  }
  const RoiSet roi_set(rois);
  const ModelParameters params = session_parameters(s, env);
  const SegmentOptions opt{s.bin_count, s.largest_component};

  const auto inputs = frame_inputs(input);
  std::vector<std::string> lines(inputs.size());
  parallel_for(inputs.size(), threads, [&](std::size_t i) {
    const ThermalFrame frame = load_frame(inputs[i].path, i);
    roi_set.validate(frame.width(), frame.height());
    FaceMask mask = FaceMask::all(frame.width(), frame.height(), true);
    if (mask_mode == "otsu") {
      try {
        mask = segment_face(frame, opt);
      } catch (const Error& e) {
        throw Error(e.kind(), inputs[i].path.string() + ": " + e.what());
      }
    }
    const PerfusionResult perf = perfuse_frame(frame, mask, params);
    const fs::path stem = out / inputs[i].label;
    ensure_parent(stem);
    const auto values = perf.frame.data();
    if (binary) {
      write_grid_binary(stem.string() + "_perfusion.tpf", values, frame.width(), frame.height());
    } else {
      write_grid_csv(stem.string() + "_perfusion.csv", values, frame.width(), frame.height(), 9,
                     true);
    }
    write_heatmap(perf.frame, std::nullopt, stem.string() + "_perfusion.pgm",
                  fs::path(stem.string() + "_perfusion.ppm"), &mask);
    write_heatmap(frame, std::nullopt, stem.string() + "_thermal.pgm",
                  fs::path(stem.string() + "_thermal.ppm"), &mask);
    std::string line = inputs[i].label + "," + std::to_string(mask.count()) + "," +
                       std::to_string(perf.errors.size());
    for (const auto& roi : roi_set.entries()) {
      line += "," + fmt("%.6f", roi_mean(frame, roi, mask)) + "," +
              fmt("%.10e", roi_mean(perf.frame, roi, mask));
    }
    lines[i] = line;
  });

  std::string summary = "frame,face_pixels,singular_pixels";
  for (const auto& roi : roi_set.entries()) {
    summary += "," + std::string(to_string(roi.name)) + "_c," +
               std::string(to_string(roi.name)) + "_perfusion";
  }
  summary += "\n";
  for (const auto& l : lines) summary += l + "\n";
  write_text_file(out / "perfusion_summary.csv", summary);
  std::cout << summary;
  return 0;
}

int cmd_analyze(const fs::path& manifest, const fs::path& out, const ModelFlags& flags,
                std::size_t threads) {
  LoadedSession session = load_session(manifest, threads);
  AnalysisSettings s = session.manifest.settings;
  flags.apply(s);
  for (const auto& w : session.warnings) std::cerr << "warning: " << w << "\n";
  const SessionAnalysis analysis = analyze_session(session.data, s, threads);
  for (const auto& w : analysis.warnings) std::cerr << "warning: " << w << "\n";
  write_report_bundle(render_report_bundle(analysis, s), out);
  std::cout << emit_table(analysis.temperature).markdown << "\n"
            << emit_table(analysis.perfusion).markdown;
  return 0;
}

int cmd_synth(const fs::path& spec_path, const fs::path& out, std::optional<std::uint64_t> seed,
              bool binary, std::size_t threads) {
  std::ifstream in(spec_path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + spec_path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kSpec, "synth spec: " + spec_path.string() + ": " + e.what());
  }
  SynthSessionSpec spec = parse_synth_spec(doc);
  if (seed) spec.seed = *seed;
  if (binary) spec.format = FrameFormat::kBinary;
  const SynthSessionResult r = synth_session(spec, out, threads);
  std::cout << "wrote " << r.manifest_path.string() << "\n"
            << "wrote " << r.ground_truth_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Facial thermal frames to blood perfusion maps and valence statistics"};
  app.require_subcommand(1);
  std::size_t threads = 1;
  app.add_option("--threads", threads, "Worker threads (output is identical for any value)")
      ->check(CLI::PositiveNumber);

  fs::path input, out;
  ModelFlags flags;

  auto* segment = app.add_subcommand("segment", "Otsu face masks for a frame or a session");
  segment->add_option("input", input, "Frame file or session manifest (.json)")->required();
  segment->add_option("--out", out, "Output directory")->required();
  add_model_flags(*segment, flags, false);

  std::optional<double> ambient;
  std::string mask_mode = "otsu";
  std::vector<std::string> roi_flags;
  bool binary = false;
  auto* perfuse = app.add_subcommand("perfuse", "Perfusion frames and heatmaps");
  perfuse->add_option("input", input, "Frame file or session manifest (.json)")->required();
  perfuse->add_option("--out", out, "Output directory")->required();
  perfuse->add_option("--ambient", ambient, "Room temperature, C (default 24)");
  perfuse->add_option("--mask", mask_mode, "Pixels to invert: otsu | all")
      ->check(CLI::IsMember({"otsu", "all"}));
  perfuse->add_option("--roi", roi_flags, "ROI as NAME:row,col[,rows,cols] or TOTAL_FACE");
  perfuse->add_flag("--binary", binary, "Write perfusion grids as .tpf instead of CSV");
  add_model_flags(*perfuse, flags, false);

  auto* analyze = app.add_subcommand("analyze", "Full report bundle for a session");
  analyze->add_option("manifest", input, "Session manifest (.json)")->required();
  analyze->add_option("--out", out, "Report directory")->required();
  add_model_flags(*analyze, flags, true);

  std::optional<std::uint64_t> seed;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic session");
  synth->add_option("spec", input, "Synthetic session spec (.json)")->required();
  synth->add_option("--out", out, "Session directory")->required();
  synth->add_option("--seed", seed, "Override the spec's seed");
  synth->add_flag("--binary", binary, "Write .tpf frames instead of CSV");

  for (auto* cmd : {segment, perfuse, analyze, synth}) {
    cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (segment->parsed()) return cmd_segment(input, out, flags, threads);
    if (perfuse->parsed()) {
      return cmd_perfuse(input, out, flags, ambient, mask_mode, roi_flags, binary, threads);
    }
    if (analyze->parsed()) return cmd_analyze(input, out, flags, threads);
    if (synth->parsed()) return cmd_synth(input, out, seed, binary, threads);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kSegmentation ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
