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

#include "thermoperf/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "thermoperf/parallel.hpp"
#include "thermoperf/roi.hpp"
#include "thermoperf/segmentation.hpp"

namespace thermoperf {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(std::string_view in, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  }
  return v;
}

ThermalFrame parse_frame_binary(std::string_view bytes, const fs::path& path,
                                std::size_t timestamp_index) {
  constexpr std::size_t kHeader = 12;
  if (bytes.size() < kHeader) {
    throw Error(ErrorKind::kFormat, path.string() + ": truncated binary frame header");
  }
  const std::size_t width = get_u32(bytes, 4);
  const std::size_t height = get_u32(bytes, 8);
  const std::size_t expected = kHeader + width * height * 8;
  if (bytes.size() != expected) {
    std::ostringstream os;
    os << path.string() << ": binary frame " << width << "x" << height << " needs " << expected
       << " bytes, file has " << bytes.size();
    throw Error(ErrorKind::kFormat, os.str());
  }
  std::vector<double> values(width * height);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t raw = 0;
    for (int b = 0; b < 8; ++b) {
      raw |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[kHeader + 8 * i + b]))
             << (8 * b);
    }
    values[i] = std::bit_cast<double>(raw);
  }
  return ThermalFrame(width, height, std::move(values), timestamp_index);
}

}  // namespace

ThermalFrame parse_frame_csv(std::string_view text, std::size_t timestamp_index) {
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::size_t cells = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = std::min(line.find(',', start), line.size());
      const std::string_view cell = trim(line.substr(start, comma - start));
      ++cells;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        std::ostringstream os;
        os << "non-numeric cell '" << cell << "' at line " << line_no << ", column " << cells;
        throw Error(ErrorKind::kFormat, os.str());
      }
      if (!std::isfinite(v) || v < kMinPlausibleCelsius || v > kMaxPlausibleCelsius) {
        std::ostringstream os;
        os << "temperature " << cell << " at line " << line_no << ", column " << cells
           << " is outside the plausible range [" << kMinPlausibleCelsius << ", "
           << kMaxPlausibleCelsius << "] C";
        throw Error(ErrorKind::kRange, os.str());
      }
      values.push_back(v);
      if (comma == line.size()) break;
      start = comma + 1;
    }
    if (height == 0) {
      width = cells;
    } else if (cells != width) {
      std::ostringstream os;
      os << "ragged row at line " << line_no << ": " << cells << " values, expected " << width;
      throw Error(ErrorKind::kFormat, os.str());
    }
    ++height;
  }
  if (height == 0) throw Error(ErrorKind::kFormat, "frame file holds no data rows");
  return ThermalFrame(width, height, std::move(values), timestamp_index);
}

ThermalFrame load_frame(const fs::path& path, std::size_t timestamp_index) {
  const std::string bytes = read_file(path);
  if (bytes.compare(0, kBinaryFrameMagic.size(), kBinaryFrameMagic) == 0) {
    return parse_frame_binary(bytes, path, timestamp_index);
  }
  try {
    return parse_frame_csv(bytes, timestamp_index);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_grid_csv(const fs::path& path, std::span<const double> values, std::size_t width,
                    std::size_t height, int decimals, bool scientific) {
  if (values.size() != width * height) {
    throw Error(ErrorKind::kInvalidInput, "grid size does not match its dimensions");
  }
  std::string out;
  out.reserve(values.size() * 12);
  char buf[64];
  const auto format = scientific ? std::chars_format::scientific : std::chars_format::fixed;
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      if (c) out.push_back(',');
      double v = values[r * width + c];
      if (v == 0.0) v = 0.0;  // no "-0.000000"
      const auto res = std::to_chars(buf, buf + sizeof(buf), v, format, decimals);
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  write_file(path, out);
}

void write_grid_binary(const fs::path& path, std::span<const double> values, std::size_t width,
                       std::size_t height) {
  if (values.size() != width * height) {
    throw Error(ErrorKind::kInvalidInput, "grid size does not match its dimensions");
  }
  std::string out(kBinaryFrameMagic);
  out.reserve(12 + values.size() * 8);
  put_u32(out, static_cast<std::uint32_t>(width));
  put_u32(out, static_cast<std::uint32_t>(height));
  for (double v : values) {
    const auto raw = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((raw >> (8 * b)) & 0xFFu));
  }
  write_file(path, out);
}

void write_frame(const fs::path& path, const ThermalFrame& frame, FrameFormat format) {
  if (format == FrameFormat::kBinary) {
    write_grid_binary(path, frame.data(), frame.width(), frame.height());
  } else {
    write_grid_csv(path, frame.data(), frame.width(), frame.height());
  }
}

// ---------------------------------------------------------------------------
// Manifest

const FrameSource& SessionManifest::source(SetLabel label) const {
  switch (label) {
    case SetLabel::kBaseline: return baseline;
    case SetLabel::kNegative: return negative;
    case SetLabel::kPositive: return positive;
  }
  return baseline;
}

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorKind::kFormat, "manifest: " + what);
}

const json& require(const json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) schema_error("missing required key '" + where + key + "'");
  return *it;
}

template <typename T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    schema_error("key '" + key + "' has the wrong type");
  }
}

FrameSource parse_source(const json& value, const std::string& key) {
  FrameSource source;
  if (value.is_string()) {
    source.directory = value.get<std::string>();
  } else if (value.is_array()) {
    source.files = get_as<std::vector<std::string>>(value, key);
  } else if (value.is_object()) {
    if (auto it = value.find("directory"); it != value.end()) {
      source.directory = get_as<std::string>(*it, key + ".directory");
    }
    if (auto it = value.find("files"); it != value.end()) {
      source.files = get_as<std::vector<std::string>>(*it, key + ".files");
    }
    if (!source.directory && source.files.empty()) {
      schema_error("set '" + key + "' needs 'directory' or 'files'");
    }
  } else {
    schema_error("set '" + key + "' must be a directory string, a file list or an object");
  }
  return source;
}

json source_to_json(const FrameSource& source) {
  json j = json::object();
  if (source.directory) j["directory"] = *source.directory;
  if (!source.files.empty()) j["files"] = source.files;
  return j;
}

}  // namespace

std::vector<RoiEntry> parse_roi_list(const json& list) {
  std::vector<RoiEntry> rois;
  if (!list.is_array()) schema_error("key 'rois' must be an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& r = list[i];
    const std::string where = "rois[" + std::to_string(i) + "].";
    if (!r.is_object()) schema_error("'rois[" + std::to_string(i) + "]' must be an object");
    RoiName name;
    try {
      name = parse_roi_name(get_as<std::string>(require(r, "name", where), where + "name"));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kFormat) throw;
      schema_error(where + "name: " + e.what());
    }
    if (name == RoiName::kTotalFace) {
      rois.push_back(RoiEntry{name, std::nullopt});
      continue;
    }
    RoiRect rect = default_roi_extent(name);
    rect.row = get_as<std::size_t>(require(r, "row", where), where + "row");
    rect.col = get_as<std::size_t>(require(r, "col", where), where + "col");
    if (auto rows = r.find("rows"); rows != r.end()) {
      rect.rows = get_as<std::size_t>(*rows, where + "rows");
    }
    if (auto cols = r.find("cols"); cols != r.end()) {
      rect.cols = get_as<std::size_t>(*cols, where + "cols");
    }
    rois.push_back(RoiEntry{name, rect});
  }
  try {
    RoiSet check(rois);
  } catch (const Error& e) {
    schema_error(std::string("rois: ") + e.what());
  }
  return rois;
}

json roi_list_to_json(std::span<const RoiEntry> rois) {
  json out = json::array();
  for (const auto& r : rois) {
    json entry{{"name", std::string(to_string(r.name))}};
    if (r.rect) {
      entry["row"] = r.rect->row;
      entry["col"] = r.rect->col;
      entry["rows"] = r.rect->rows;
      entry["cols"] = r.rect->cols;
    }
    out.push_back(entry);
  }
  return out;
}

AnalysisSettings parse_analysis_settings(const json& doc) {
  AnalysisSettings s;
  if (auto it = doc.find("model"); it != doc.end()) {
    if (!it->is_object()) schema_error("key 'model' must be an object");
    if (auto v = it->find("variant"); v != it->end()) {
      try {
        s.variant = parse_model_variant(get_as<std::string>(*v, "model.variant"));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kFormat) throw;
        schema_error(std::string("model.variant: ") + e.what());
      }
      s.output_scale = default_output_scale(s.variant);
    }
    if (auto v = it->find("output_scale"); v != it->end()) {
      s.output_scale = get_as<double>(*v, "model.output_scale");
    }
    if (auto v = it->find("sensitivity_threshold"); v != it->end()) {
      s.sensitivity_threshold = get_as<double>(*v, "model.sensitivity_threshold");
    }
    if (auto v = it->find("bin_count"); v != it->end()) {
      s.bin_count = get_as<std::size_t>(*v, "model.bin_count");
    }
    if (auto v = it->find("largest_component"); v != it->end()) {
      s.largest_component = get_as<bool>(*v, "model.largest_component");
    }
  }
  if (auto it = doc.find("pairing"); it != doc.end()) {
    try {
      s.pairing = parse_pairing_policy(get_as<std::string>(*it, "pairing"));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kFormat) throw;
      schema_error(std::string("pairing: ") + e.what());
    }
  }
  return s;
}

json analysis_settings_to_json(const AnalysisSettings& s) {
  return json{{"variant", std::string(to_string(s.variant))},
              {"output_scale", s.output_scale},
              {"sensitivity_threshold", s.sensitivity_threshold},
              {"bin_count", s.bin_count},
              {"largest_component", s.largest_component}};
}

SessionManifest parse_manifest(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) schema_error("top level must be an object");
  SessionManifest m;
  m.base_dir = base_dir;
  m.subject_id = get_as<std::string>(require(doc, "subject_id", ""), "subject_id");

  if (auto it = doc.find("environment"); it != doc.end()) {
    if (!it->is_object()) schema_error("key 'environment' must be an object");
    if (auto a = it->find("ambient_c"); a != it->end()) {
      m.environment.ambient_c = get_as<double>(*a, "environment.ambient_c");
    }
    if (auto h = it->find("relative_humidity_pct"); h != it->end()) {
      m.environment.relative_humidity_pct = get_as<double>(*h, "environment.relative_humidity_pct");
    }
  }

  m.baseline = parse_source(require(doc, "baseline", ""), "baseline");
  m.negative = parse_source(require(doc, "negative", ""), "negative");
  m.positive = parse_source(require(doc, "positive", ""), "positive");

  if (auto it = doc.find("rois"); it != doc.end()) m.rois = parse_roi_list(*it);
  m.settings = parse_analysis_settings(doc);
  if (auto it = doc.find("seed"); it != doc.end()) {
    m.seed = get_as<std::uint64_t>(*it, "seed");
  }
  return m;
}

SessionManifest load_manifest(const fs::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_error(std::string("invalid JSON syntax: ") + e.what());
  }
  return parse_manifest(doc, path.parent_path());
}

json manifest_to_json(const SessionManifest& m) {
  json j{
      {"subject_id", m.subject_id},
      {"environment",
       {{"ambient_c", m.environment.ambient_c},
        {"relative_humidity_pct", m.environment.relative_humidity_pct}}},
      {"baseline", source_to_json(m.baseline)},
      {"negative", source_to_json(m.negative)},
      {"positive", source_to_json(m.positive)},
      {"rois", roi_list_to_json(m.rois)},
      {"model", analysis_settings_to_json(m.settings)},
      {"pairing", std::string(to_string(m.settings.pairing))},
  };
  if (m.seed) j["seed"] = *m.seed;
  return j;
}

std::vector<fs::path> resolve_frames(const SessionManifest& m, SetLabel label) {
  const FrameSource& source = m.source(label);
  const std::string set(to_string(label));
  std::vector<fs::path> paths;
  if (source.directory) {
    const fs::path dir = m.base_dir / *source.directory;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      throw Error(ErrorKind::kSession, set + " frame directory not found: " + dir.string());
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const auto ext = entry.path().extension();
      if (ext == ".csv" || ext == ".tpf") paths.push_back(entry.path());
    }
  }
  for (const auto& f : source.files) {
    const fs::path p = m.base_dir / f;
    if (!fs::exists(p)) {
      throw Error(ErrorKind::kSession, set + " frame file not found: " + p.string());
    }
    paths.push_back(p);
  }
  if (paths.empty()) throw Error(ErrorKind::kSession, set + " set has no frames");
  // Bytewise on file names, then on the full path for equal names.
  std::sort(paths.begin(), paths.end(), [](const fs::path& a, const fs::path& b) {
    const auto an = a.filename().string();
    const auto bn = b.filename().string();
    if (an != bn) return an < bn;
    return a.string() < b.string();
  });
  return paths;
}

LoadedSession load_session(const fs::path& manifest_path, std::size_t threads) {
  LoadedSession out;
  out.manifest = load_manifest(manifest_path);
  const auto& m = out.manifest;
  out.data.subject_id = m.subject_id;
  out.data.environment = m.environment;

  std::size_t width = 0;
  std::size_t height = 0;
  fs::path first;
  for (SetLabel label : {SetLabel::kBaseline, SetLabel::kNegative, SetLabel::kPositive}) {
    const auto paths = resolve_frames(m, label);
    std::vector<std::optional<ThermalFrame>> loaded(paths.size());
    parallel_for(paths.size(), threads, [&](std::size_t i) { loaded[i] = load_frame(paths[i], i); });

    auto& frames = label == SetLabel::kBaseline   ? out.data.baseline
                   : label == SetLabel::kNegative ? out.data.negative
                                                  : out.data.positive;
    frames.reserve(loaded.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
      const auto& f = *loaded[i];
      if (first.empty()) {
        width = f.width();
        height = f.height();
        first = paths[i];
      } else if (f.width() != width || f.height() != height) {
        std::ostringstream os;
        os << "mixed frame dimensions: " << paths[i].string() << " is " << f.width() << "x"
           << f.height() << " but " << first.string() << " is " << width << "x" << height;
        throw Error(ErrorKind::kSession, os.str());
      }
      frames.push_back(std::move(*loaded[i]));
    }
    const std::size_t nominal =
        label == SetLabel::kBaseline ? kNominalBaselineFrames : kNominalValenceFrames;
    if (frames.size() != nominal) {
      std::ostringstream os;
      os << to_string(label) << " set has " << frames.size() << " frames (nominal " << nominal
         << ")";
      out.warnings.push_back(os.str());
    }
  }

  if (m.rois.empty()) {
    const auto mask = segment_face(out.data.baseline.front(),
                                   SegmentOptions{m.settings.bin_count, m.settings.largest_component});
    out.data.roi_set = default_roi_layout(mask);
    out.warnings.push_back("no ROIs in manifest; proposed a default layout from the first baseline mask");
  } else {
    out.data.roi_set = RoiSet(m.rois);
  }
  out.data.roi_set.validate(width, height);
  return out;
}

}  // namespace thermoperf
