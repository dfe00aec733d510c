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

#include "thermoperf/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace thermoperf {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kWilcoxonArrow = "\xE2\x86\x93";  // U+2193

std::string units(Quantity q) {
  return q == Quantity::kTemperature ? "C" : "1e-2 kg/(m^2 s)";
}

std::string mean_sd(const SetSummary& s, double factor) {
  return format_fixed(s.mean * factor, 2) + " (" + format_fixed(s.sd * factor, 2) + ")";
}

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  double rounded = std::round(value * scale);
  if (rounded == 0.0) rounded = 0.0;
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), rounded / scale, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

double display_factor(Quantity quantity) {
  return quantity == Quantity::kTemperature ? 1.0 : 100.0;
}

std::string significance_marker(const TestReport& test) {
  std::string out;
  if (test.significance == Significance::kP001) out = "**";
  if (test.significance == Significance::kP05) out = "*";
  if (test.test_used == TestKind::kWilcoxon) out += kWilcoxonArrow;
  return out;
}

std::string format_row_cells(const RoiRow& row, Quantity quantity) {
  const double f = display_factor(quantity);
  const auto summary = [f](const std::optional<SetSummary>& s) {
    return s ? mean_sd(*s, f) : std::string("n/a");
  };
  const auto delta = [f](const std::optional<ValenceResult>& r) {
    if (!r) return std::string("n/a | n/a");
    return format_fixed(r->diff.delta_abs * f, 2) + significance_marker(r->test) + " | " +
           format_fixed(r->diff.delta_pct, 2);
  };
  return mean_sd(row.baseline, f) + " | " + summary(row.negative) + " | " + summary(row.positive) +
         " | " + delta(row.negative_result) + " | " + delta(row.positive_result);
}

TableDocument emit_table(const ResultTable& table) {
  const double f = display_factor(table.quantity);
  TableDocument doc;

  std::ostringstream csv;
  csv << "subject,roi,quantity,units,baseline_mean,baseline_sd,negative_mean,negative_sd,"
         "positive_mean,positive_sd,delta_negative,marker_negative,test_negative,"
         "delta_pct_negative,delta_positive,marker_positive,test_positive,delta_pct_positive\n";
  for (const auto& row : table.rows) {
    csv << csv_escape(table.subject_id) << ',' << to_string(row.roi) << ','
        << to_string(table.quantity) << ',' << csv_escape(units(table.quantity)) << ','
        << format_fixed(row.baseline.mean * f, 2) << ',' << format_fixed(row.baseline.sd * f, 2);
    for (const auto& s : {row.negative, row.positive}) {
      if (s) {
        csv << ',' << format_fixed(s->mean * f, 2) << ',' << format_fixed(s->sd * f, 2);
      } else {
        csv << ",,";
      }
    }
    for (const auto& r : {row.negative_result, row.positive_result}) {
      if (r) {
        csv << ',' << format_fixed(r->diff.delta_abs * f, 2) << ',' << significance_marker(r->test)
            << ',' << to_string(r->test.test_used) << ',' << format_fixed(r->diff.delta_pct, 2);
      } else {
        csv << ",,,,";
      }
    }
    csv << '\n';
  }
  doc.csv = csv.str();

  std::ostringstream md;
  const bool temp = table.quantity == Quantity::kTemperature;
  md << "## " << (temp ? "Average temperature" : "Average blood perfusion") << " by ROI: "
     << table.subject_id << "\n\n";
  md << "Values in " << units(table.quantity)
     << "; percentages dimensionless. Standard deviations in parentheses.\n\n";
  md << "| ROI | Baseline | Negative valence | Positive valence | Delta neg | Delta% neg | "
        "Delta pos | Delta% pos |\n";
  md << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : table.rows) {
    md << "| " << display_name(row.roi) << " | " << format_row_cells(row, table.quantity)
       << " |\n";
  }
  md << "\nPaired Student's t or " << kWilcoxonArrow
     << " Wilcoxon signed-rank (chosen by a Kolmogorov-Smirnov normality check): "
        "* p < 0.05, ** p < 0.001\n";
  doc.markdown = md.str();
  return doc;
}

std::span<const RoiName> chart_order() {
  static constexpr RoiName kOrder[] = {
      RoiName::kRightCheek, RoiName::kRightUpperLip, RoiName::kRightEye,
      RoiName::kNose,       RoiName::kForehead,      RoiName::kLeftEye,
      RoiName::kLeftUpperLip, RoiName::kLeftCheek,   RoiName::kTotalFace,
  };
  return kOrder;
}

std::string emit_pct_chart_data(std::span<const ResultTable> tables) {
  std::vector<RoiName> columns;
  for (RoiName name : chart_order()) {
    const bool present = std::any_of(tables.begin(), tables.end(), [name](const ResultTable& t) {
      return std::any_of(t.rows.begin(), t.rows.end(),
                         [name](const RoiRow& r) { return r.roi == name; });
    });
    if (present) columns.push_back(name);
  }

  std::ostringstream out;
  out << "subject,quantity,valence";
  for (RoiName name : columns) out << ',' << to_string(name);
  out << '\n';
  for (const auto& table : tables) {
    for (Valence v : {Valence::kNegative, Valence::kPositive}) {
      const auto result_of = [v](const RoiRow& r) -> const std::optional<ValenceResult>& {
        return v == Valence::kNegative ? r.negative_result : r.positive_result;
      };
      const bool any = std::any_of(table.rows.begin(), table.rows.end(),
                                   [&](const RoiRow& r) { return result_of(r).has_value(); });
      if (!any) continue;
      out << csv_escape(table.subject_id) << ',' << to_string(table.quantity) << ','
          << to_string(v);
      for (RoiName name : columns) {
        out << ',';
        const auto it = std::find_if(table.rows.begin(), table.rows.end(),
                                     [name](const RoiRow& r) { return r.roi == name; });
        if (it != table.rows.end() && result_of(*it)) {
          out << format_fixed(result_of(*it)->diff.delta_pct, 2);
        }
      }
      out << '\n';
    }
  }
  return out.str();
}

json test_reports_to_json(std::span<const ResultTable> tables) {
  json out = json::array();
  for (const auto& table : tables) {
    for (const auto& row : table.rows) {
      for (const auto* r : {&row.negative_result, &row.positive_result}) {
        if (!r->has_value()) continue;
        const auto& d = (*r)->diff;
        const auto& t = (*r)->test;
        out.push_back(json{
            {"subject", table.subject_id},
            {"roi", std::string(to_string(row.roi))},
            {"quantity", std::string(to_string(table.quantity))},
            {"valence", std::string(to_string(d.valence))},
            {"mean_baseline", d.mean_baseline},
            {"mean_valence", d.mean_valence},
            {"delta_abs", d.delta_abs},
            {"delta_pct", d.delta_pct},
            {"test_used", std::string(to_string(t.test_used))},
            {"statistic", t.statistic},
            {"p_value", t.p_value},
            {"n_pairs", t.n_pairs},
            {"normality_p", t.normality_p ? json(*t.normality_p) : json(nullptr)},
            {"significance", std::string(to_string(t.significance))},
            {"technically_significant", t.technically_significant},
            {"significant", t.significant},
            {"pairing", std::string(to_string(t.pairing))},
            {"diagnostic", t.diagnostic},
        });
      }
    }
  }
  return out;
}

const std::array<std::array<std::uint8_t, 3>, 256>& heat_colormap() {
  static const auto table = [] {
    struct Stop {
      int index;
      double r, g, b;
    };
    constexpr Stop kStops[] = {
        {0, 0, 0, 0}, {64, 40, 0, 140}, {128, 205, 0, 120}, {192, 255, 165, 0}, {255, 255, 255, 255},
    };
    std::array<std::array<std::uint8_t, 3>, 256> t{};
    for (int i = 0; i < 256; ++i) {
      int s = 0;
      while (s + 1 < 4 && i > kStops[s + 1].index) ++s;
      const Stop& a = kStops[s];
      const Stop& b = kStops[s + 1];
      const double u = static_cast<double>(i - a.index) / static_cast<double>(b.index - a.index);
      const auto lerp = [u](double x, double y) {
        return static_cast<std::uint8_t>(std::floor(x + (y - x) * u + 0.5));
      };
      t[static_cast<std::size_t>(i)] = {lerp(a.r, b.r), lerp(a.g, b.g), lerp(a.b, b.b)};
    }
    return t;
  }();
  return table;
}

std::uint8_t gray_level(double value, const HeatmapRange& range) {
  const double scaled = std::floor((value - range.lo) / (range.hi - range.lo) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

HeatmapImages render_heatmap(std::span<const double> values, std::size_t width,
                             std::size_t height, std::optional<HeatmapRange> range,
                             std::span<const std::uint8_t> include) {
  if (values.empty() || values.size() != width * height) {
    throw Error(ErrorKind::kParameter, "heatmap needs a non-empty frame");
  }
  if (range && !(range->hi > range->lo)) {
    throw Error(ErrorKind::kParameter, "heatmap range needs hi > lo");
  }
  bool degenerate = false;
  if (!range) {
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!include.empty() && !include[i]) continue;
      if (!any) {
        lo = hi = values[i];
        any = true;
      }
      lo = std::min(lo, values[i]);
      hi = std::max(hi, values[i]);
    }
    degenerate = !(hi > lo);
    range = HeatmapRange{lo, degenerate ? lo + 1.0 : hi};
  }

  const std::string dims = std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  HeatmapImages img;
  img.pgm = "P5\n" + dims;
  img.ppm = "P6\n" + dims;
  img.pgm.reserve(img.pgm.size() + values.size());
  img.ppm.reserve(img.ppm.size() + 3 * values.size());
  const auto& cmap = heat_colormap();
  for (double v : values) {
    const std::uint8_t g = degenerate ? 0 : gray_level(v, *range);
    img.pgm.push_back(static_cast<char>(g));
    for (auto channel : cmap[g]) img.ppm.push_back(static_cast<char>(channel));
  }
  return img;
}

void write_text_file(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

namespace {

void write_images(const HeatmapImages& img, const fs::path& pgm_path,
                  const std::optional<fs::path>& ppm_path) {
  write_text_file(pgm_path, img.pgm);
  if (ppm_path) write_text_file(*ppm_path, img.ppm);
}

}  // namespace

void write_heatmap(const ThermalFrame& frame, std::optional<HeatmapRange> range,
                   const fs::path& pgm_path, const std::optional<fs::path>& ppm_path,
                   const FaceMask* mask) {
  std::span<const std::uint8_t> include;
  if (mask) include = mask->bits();
  write_images(render_heatmap(frame.data(), frame.width(), frame.height(), range, include),
               pgm_path, ppm_path);
}

void write_heatmap(const PerfusionFrame& frame, std::optional<HeatmapRange> range,
                   const fs::path& pgm_path, const std::optional<fs::path>& ppm_path,
                   const FaceMask* mask) {
  std::vector<std::uint8_t> include;
  if (mask) {
    include.assign(mask->bits().begin(), mask->bits().end());
    const auto flagged = frame.flagged();
    for (std::size_t i = 0; i < include.size(); ++i) include[i] = include[i] && !flagged[i];
  }
  write_images(render_heatmap(frame.data(), frame.width(), frame.height(), range, include),
               pgm_path, ppm_path);
}

void write_mask_pgm(const FaceMask& mask, const fs::path& path) {
  std::string out = "P5\n" + std::to_string(mask.width()) + " " + std::to_string(mask.height()) +
                    "\n255\n";
  for (auto b : mask.bits()) out.push_back(static_cast<char>(b ? 255 : 0));
  write_text_file(path, out);
}

}  // namespace thermoperf
