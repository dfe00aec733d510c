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

#include "thermoperf/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

namespace thermoperf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kSingularity: return "singularity";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kPairing: return "pairing error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kRange: return "range error";
    case ErrorKind::kSession: return "session error";
    case ErrorKind::kParameter: return "parameter error";
    case ErrorKind::kEmptyRoi: return "empty roi";
    case ErrorKind::kUndefinedPercentage: return "undefined percentage";
    case ErrorKind::kSegmentation: return "segmentation failure";
    case ErrorKind::kSpec: return "spec error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "unknown";
}

ThermalFrame::ThermalFrame(std::size_t width, std::size_t height, std::vector<double> celsius,
                           std::size_t timestamp_index)
    : width_(width), height_(height), data_(std::move(celsius)), timestamp_index_(timestamp_index) {
  if (width_ == 0 || height_ == 0) {
    throw Error(ErrorKind::kInvalidInput, "thermal frame must have positive dimensions");
  }
  if (data_.size() != width_ * height_) {
    std::ostringstream os;
    os << "thermal frame holds " << data_.size() << " values, expected " << width_ << "x"
       << height_;
    throw Error(ErrorKind::kInvalidInput, os.str());
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const double v = data_[i];
    if (!std::isfinite(v) || v < kMinPlausibleCelsius || v > kMaxPlausibleCelsius) {
      std::ostringstream os;
      os << "temperature " << v << " C at row " << i / width_ << ", col " << i % width_
         << " is outside the plausible range [" << kMinPlausibleCelsius << ", "
         << kMaxPlausibleCelsius << "]";
      throw Error(ErrorKind::kRange, os.str());
    }
  }
}

FaceMask::FaceMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (bits_.size() != width_ * height_) {
    throw Error(ErrorKind::kInvalidInput, "face mask size does not match its dimensions");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

FaceMask FaceMask::all(std::size_t width, std::size_t height, bool value) {
  return FaceMask(width, height, std::vector<std::uint8_t>(width * height, value ? 1 : 0));
}

std::size_t FaceMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

PerfusionFrame::PerfusionFrame(std::size_t width, std::size_t height, std::vector<double> values,
                               std::vector<std::uint8_t> flagged, bool mask_applied)
    : width_(width),
      height_(height),
      data_(std::move(values)),
      flagged_(std::move(flagged)),
      mask_applied_(mask_applied) {
  if (flagged_.empty()) flagged_.assign(data_.size(), 0);
  if (data_.size() != width_ * height_ || flagged_.size() != data_.size()) {
    throw Error(ErrorKind::kInvalidInput, "perfusion frame size does not match its dimensions");
  }
}

std::string_view to_string(ModelVariant variant) {
  return variant == ModelVariant::kFull ? "full" : "table";
}

ModelVariant parse_model_variant(std::string_view text) {
  if (text == "full" || text == "FULL") return ModelVariant::kFull;
  if (text == "table" || text == "TABLE_CONSISTENT" || text == "table_consistent") {
    return ModelVariant::kTableConsistent;
  }
  throw Error(ErrorKind::kParameter, "unknown model variant '" + std::string(text) + "'");
}

ModelParameters ModelParameters::defaults(ModelVariant variant) {
  ModelParameters p;
  p.variant = variant;
  p.output_scale = default_output_scale(variant);
  return p;
}

void ModelParameters::validate() const {
  const std::array<std::pair<const char*, double>, 18> positive{{
      {"blood_density", blood_density},
      {"blood_specific_heat", blood_specific_heat},
      {"arterial_temp_k", arterial_temp_k},
      {"core_temp_k", core_temp_k},
      {"skin_conductivity", skin_conductivity},
      {"air_conductivity", air_conductivity},
      {"metabolic_flux", metabolic_flux},
      {"stefan_boltzmann", stefan_boltzmann},
      {"prandtl", prandtl},
      {"air_kinematic_viscosity", air_kinematic_viscosity},
      {"air_thermal_expansion", air_thermal_expansion},
      {"gravity", gravity},
      {"convection_constant", convection_constant},
      {"characteristic_length", characteristic_length},
      {"core_to_skin_distance", core_to_skin_distance},
      {"ambient_temp_k", ambient_temp_k},
      {"output_scale", output_scale},
      {"convection_exponent", convection_exponent},
  }};
  for (const auto& [name, value] : positive) {
    if (!std::isfinite(value) || value <= 0.0) {
      throw Error(ErrorKind::kParameter, std::string(name) + " must be finite and positive");
    }
  }
  if (emissivity <= 0.0 || emissivity > 1.0) {
    throw Error(ErrorKind::kParameter, "emissivity must lie in (0, 1]");
  }
  if (countercurrent_ratio <= 0.0 || countercurrent_ratio > 1.0) {
    throw Error(ErrorKind::kParameter, "countercurrent_ratio must lie in (0, 1]");
  }
  if (convection_exponent >= 1.0) {
    throw Error(ErrorKind::kParameter, "convection_exponent must lie in (0, 1)");
  }
  if (ambient_temp_k >= arterial_temp_k) {
    throw Error(ErrorKind::kParameter, "ambient temperature must be below arterial temperature");
  }
}

void to_json(nlohmann::json& j, const ModelParameters& p) {
  j = nlohmann::json{
      {"blood_density", p.blood_density},
      {"blood_specific_heat", p.blood_specific_heat},
      {"arterial_temp_k", p.arterial_temp_k},
      {"core_temp_k", p.core_temp_k},
      {"skin_conductivity", p.skin_conductivity},
      {"air_conductivity", p.air_conductivity},
      {"metabolic_flux", p.metabolic_flux},
      {"stefan_boltzmann", p.stefan_boltzmann},
      {"emissivity", p.emissivity},
      {"countercurrent_ratio", p.countercurrent_ratio},
      {"prandtl", p.prandtl},
      {"air_kinematic_viscosity", p.air_kinematic_viscosity},
      {"air_thermal_expansion", p.air_thermal_expansion},
      {"gravity", p.gravity},
      {"convection_constant", p.convection_constant},
      {"convection_exponent", p.convection_exponent},
      {"characteristic_length", p.characteristic_length},
      {"core_to_skin_distance", p.core_to_skin_distance},
      {"ambient_temp_k", p.ambient_temp_k},
      {"variant", std::string(to_string(p.variant))},
      {"output_scale", p.output_scale},
  };
}

void from_json(const nlohmann::json& j, ModelParameters& p) {
  // Missing keys keep their defaults so partial overrides are accepted.
  const auto get = [&j](const char* key, double& out) {
    if (auto it = j.find(key); it != j.end()) out = it->get<double>();
  };
  if (auto it = j.find("variant"); it != j.end()) {
    p.variant = parse_model_variant(it->get<std::string>());
    p.output_scale = default_output_scale(p.variant);
  }
  get("blood_density", p.blood_density);
  get("blood_specific_heat", p.blood_specific_heat);
  get("arterial_temp_k", p.arterial_temp_k);
  get("core_temp_k", p.core_temp_k);
  get("skin_conductivity", p.skin_conductivity);
  get("air_conductivity", p.air_conductivity);
  get("metabolic_flux", p.metabolic_flux);
  get("stefan_boltzmann", p.stefan_boltzmann);
  get("emissivity", p.emissivity);
  get("countercurrent_ratio", p.countercurrent_ratio);
  get("prandtl", p.prandtl);
  get("air_kinematic_viscosity", p.air_kinematic_viscosity);
  get("air_thermal_expansion", p.air_thermal_expansion);
  get("gravity", p.gravity);
  get("convection_constant", p.convection_constant);
  get("convection_exponent", p.convection_exponent);
  get("characteristic_length", p.characteristic_length);
  get("core_to_skin_distance", p.core_to_skin_distance);
  get("ambient_temp_k", p.ambient_temp_k);
  get("output_scale", p.output_scale);
}

namespace {

struct RoiNameInfo {
  RoiName name;
  std::string_view key;
  std::string_view display;
};

constexpr std::array<RoiNameInfo, 9> kRoiNames{{
    {RoiName::kNose, "NOSE", "Nose"},
    {RoiName::kForehead, "FOREHEAD", "Forehead"},
    {RoiName::kLeftEye, "LEFT_EYE", "Left eye"},
    {RoiName::kRightEye, "RIGHT_EYE", "Right eye"},
    {RoiName::kLeftCheek, "LEFT_CHEEK", "Left cheek"},
    {RoiName::kRightCheek, "RIGHT_CHEEK", "Right cheek"},
    {RoiName::kLeftUpperLip, "LEFT_UPPER_LIP", "Left upper lip"},
    {RoiName::kRightUpperLip, "RIGHT_UPPER_LIP", "Right upper lip"},
    {RoiName::kTotalFace, "TOTAL_FACE", "Total face"},
}};

}  // namespace

std::string_view to_string(RoiName name) {
  for (const auto& info : kRoiNames) {
    if (info.name == name) return info.key;
  }
  return "UNKNOWN";
}

std::string_view display_name(RoiName name) {
  for (const auto& info : kRoiNames) {
    if (info.name == name) return info.display;
  }
  return "Unknown";
}

RoiName parse_roi_name(std::string_view text) {
  for (const auto& info : kRoiNames) {
    if (info.key == text) return info.name;
  }
  throw Error(ErrorKind::kParameter, "unknown ROI name '" + std::string(text) + "'");
}

RoiRect default_roi_extent(RoiName name) {
  if (name == RoiName::kForehead) return RoiRect{0, 0, kForeheadRows, kForeheadCols};
  return RoiRect{0, 0, kPointRoiSide, kPointRoiSide};
}

RoiSet::RoiSet(std::vector<RoiEntry> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.name == RoiName::kTotalFace && e.rect) {
      throw Error(ErrorKind::kParameter, "TOTAL_FACE is defined by the face mask, not a rect");
    }
    if (e.name != RoiName::kTotalFace && !e.rect) {
      throw Error(ErrorKind::kParameter,
                  "ROI " + std::string(to_string(e.name)) + " requires a rect");
    }
    if (e.rect && (e.rect->rows == 0 || e.rect->cols == 0)) {
      throw Error(ErrorKind::kParameter,
                  "ROI " + std::string(to_string(e.name)) + " has an empty rect");
    }
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t k = i + 1; k < entries_.size(); ++k) {
      if (entries_[i].name == entries_[k].name) {
        throw Error(ErrorKind::kParameter,
                    "ROI " + std::string(to_string(entries_[i].name)) + " defined twice");
      }
    }
  }
}

const RoiEntry* RoiSet::find(RoiName name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

void RoiSet::validate(std::size_t width, std::size_t height) const {
  for (const auto& e : entries_) {
    if (!e.rect) continue;
    const auto& r = *e.rect;
    if (r.row + r.rows > height || r.col + r.cols > width) {
      std::ostringstream os;
      os << "ROI " << to_string(e.name) << " (row " << r.row << ", col " << r.col << ", "
         << r.rows << "x" << r.cols << ") exceeds frame bounds " << height << "x" << width;
      throw Error(ErrorKind::kRange, os.str());
    }
  }
}

std::string_view to_string(SetLabel label) {
  switch (label) {
    case SetLabel::kBaseline: return "baseline";
    case SetLabel::kNegative: return "negative";
    case SetLabel::kPositive: return "positive";
  }
  return "unknown";
}

const std::vector<ThermalFrame>& SessionData::frames(SetLabel label) const {
  switch (label) {
    case SetLabel::kBaseline: return baseline;
    case SetLabel::kNegative: return negative;
    case SetLabel::kPositive: return positive;
  }
  return baseline;
}

}  // namespace thermoperf
