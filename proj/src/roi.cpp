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

#include "thermoperf/roi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace thermoperf {

std::string_view to_string(Quantity quantity) {
  return quantity == Quantity::kTemperature ? "temperature" : "perfusion";
}

std::string_view to_string(Valence valence) {
  return valence == Valence::kNegative ? "negative" : "positive";
}

SetLabel set_label(Valence valence) {
  return valence == Valence::kNegative ? SetLabel::kNegative : SetLabel::kPositive;
}

namespace {

void check_mask(const FaceMask& mask, std::size_t width, std::size_t height) {
  if (mask.width() != width || mask.height() != height) {
    throw Error(ErrorKind::kInvalidInput, "face mask dimensions differ from the frame");
  }
}

void check_rect(const RoiEntry& roi, std::size_t width, std::size_t height) {
  const auto& r = *roi.rect;
  if (r.row + r.rows > height || r.col + r.cols > width) {
    throw Error(ErrorKind::kRange,
                "ROI " + std::string(to_string(roi.name)) + " exceeds the frame bounds");
  }
}

[[noreturn]] void throw_empty(const RoiEntry& roi) {
  throw Error(ErrorKind::kEmptyRoi,
              "ROI " + std::string(to_string(roi.name)) + " has no pixels to average");
}

// `keep(i)` decides whether pixel i contributes. Summation is sequential in
// raster order so the mean is reproducible; the second pass removes the
// first pass's rounding error, so a constant region averages to exactly its
// value.
template <typename Keep>
double masked_mean(std::span<const double> data, std::size_t width, const RoiEntry& roi,
                   const FaceMask& mask, Keep keep) {
  const auto visit = [&](auto&& fn) {
    if (roi.rect) {
      const auto& r = *roi.rect;
      for (std::size_t row = r.row; row < r.row + r.rows; ++row) {
        for (std::size_t col = r.col; col < r.col + r.cols; ++col) {
          const std::size_t i = row * width + col;
          if (keep(i)) fn(data[i]);
        }
      }
    } else {
      const auto bits = mask.bits();
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (bits[i] && keep(i)) fn(data[i]);
      }
    }
  };
  double sum = 0.0;
  std::size_t n = 0;
  visit([&](double v) {
    sum += v;
    ++n;
  });
  if (n == 0) throw_empty(roi);
  const double mean = sum / static_cast<double>(n);
  double residual = 0.0;
  visit([&](double v) { residual += v - mean; });
  return mean + residual / static_cast<double>(n);
}

}  // namespace

double roi_mean(const ThermalFrame& frame, const RoiEntry& roi, const FaceMask& mask) {
  if (roi.rect) {
    check_rect(roi, frame.width(), frame.height());
  } else {
    check_mask(mask, frame.width(), frame.height());
  }
  return masked_mean(frame.data(), frame.width(), roi, mask, [](std::size_t) { return true; });
}

double roi_mean(const PerfusionFrame& frame, const RoiEntry& roi, const FaceMask& mask) {
  if (roi.rect) check_rect(roi, frame.width(), frame.height());
  const auto flagged = frame.flagged();
  if (!frame.mask_applied()) {
    if (!roi.rect) check_mask(mask, frame.width(), frame.height());
    return masked_mean(frame.data(), frame.width(), roi, mask,
                       [flagged](std::size_t i) { return flagged[i] == 0; });
  }
  // Background pixels of a masked frame hold 0, not a perfusion value.
  check_mask(mask, frame.width(), frame.height());
  const auto bits = mask.bits();
  return masked_mean(frame.data(), frame.width(), roi, mask,
                     [flagged, bits](std::size_t i) { return flagged[i] == 0 && bits[i] != 0; });
}

SetSummary set_average(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorKind::kInvalidInput, "cannot average an empty series");
  }
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  double mean = sum / n;
  double residual = 0.0;
  for (double v : values) residual += v - mean;
  mean += residual / n;
  if (values.size() == 1) return SetSummary{mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return SetSummary{mean, std::sqrt(ss / (n - 1.0))};
}

DiffResult diff_pair(const SetSummary& baseline, const SetSummary& valence, RoiName roi,
                     Quantity quantity, Valence valence_label) {
  if (baseline.mean == 0.0) {
    throw Error(ErrorKind::kUndefinedPercentage,
                "percentage difference undefined for ROI " + std::string(to_string(roi)) +
                    ": baseline mean is zero");
  }
  DiffResult d;
  d.roi = roi;
  d.quantity = quantity;
  d.valence = valence_label;
  d.mean_baseline = baseline.mean;
  d.mean_valence = valence.mean;
  d.sd_baseline = baseline.sd;
  d.sd_valence = valence.sd;
  d.delta_abs = valence.mean - baseline.mean;
  d.delta_pct = d.delta_abs / baseline.mean * 100.0;
  return d;
}

RoiSet default_roi_layout(std::size_t top, std::size_t left, std::size_t rows, std::size_t cols,
                          std::size_t frame_width, std::size_t frame_height) {
  struct Placement {
    RoiName name;
    double row_frac;  // centre, as a fraction of the box height from the top
    double col_off;   // centre, as a fraction of the box width from the middle
  };
  // Image-left is the subject's right.
  static constexpr Placement kPlacements[] = {
      {RoiName::kNose, 0.55, 0.0},
      {RoiName::kForehead, 0.20, 0.0},
      {RoiName::kRightEye, 0.40, -0.25},
      {RoiName::kLeftEye, 0.40, 0.25},
      {RoiName::kRightCheek, 0.60, -0.30},
      {RoiName::kLeftCheek, 0.60, 0.30},
      {RoiName::kRightUpperLip, 0.70, -0.08},
      {RoiName::kLeftUpperLip, 0.70, 0.08},
  };
  const double centre_col = static_cast<double>(left) + static_cast<double>(cols) / 2.0;
  std::vector<RoiEntry> entries;
  for (const auto& p : kPlacements) {
    RoiRect rect = default_roi_extent(p.name);
    const double r = static_cast<double>(top) + p.row_frac * static_cast<double>(rows) -
                     static_cast<double>(rect.rows) / 2.0;
    const double c = centre_col + p.col_off * static_cast<double>(cols) -
                     static_cast<double>(rect.cols) / 2.0;
    if (r < 0.0 || c < 0.0) {
      throw Error(ErrorKind::kRange, "default layout places ROI " +
                                         std::string(to_string(p.name)) + " outside the frame");
    }
    rect.row = static_cast<std::size_t>(std::lround(r));
    rect.col = static_cast<std::size_t>(std::lround(c));
    entries.push_back(RoiEntry{p.name, rect});
  }
  entries.push_back(RoiEntry{RoiName::kTotalFace, std::nullopt});
  RoiSet set(std::move(entries));
  set.validate(frame_width, frame_height);
  return set;
}

RoiSet default_roi_layout(const FaceMask& mask) {
  std::size_t top = mask.height(), bottom = 0, left = mask.width(), right = 0;
  bool any = false;
  for (std::size_t r = 0; r < mask.height(); ++r) {
    for (std::size_t c = 0; c < mask.width(); ++c) {
      if (!mask.at(r, c)) continue;
      any = true;
      top = std::min(top, r);
      bottom = std::max(bottom, r);
      left = std::min(left, c);
      right = std::max(right, c);
    }
  }
  if (!any) throw Error(ErrorKind::kEmptyRoi, "cannot place ROIs on an empty face mask");
  return default_roi_layout(top, left, bottom - top + 1, right - left + 1, mask.width(),
                            mask.height());
}

}  // namespace thermoperf
