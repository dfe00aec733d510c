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

// Domain types shared by every stage of the thermal -> perfusion pipeline.
//
// Frames hold temperatures in degrees Celsius (the unit of every file and
// report); the physics in perfusion.hpp works in Kelvin. All types are
// immutable value objects once constructed.

#ifndef THERMOPERF_CORE_HPP_
#define THERMOPERF_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "thermoperf/error.hpp"

namespace thermoperf {

inline constexpr double kKelvinOffset = 273.15;
inline constexpr double kMinPlausibleCelsius = -40.0;
inline constexpr double kMaxPlausibleCelsius = 120.0;

struct Celsius {
  double value;
};

struct Kelvin {
  double value;
};

constexpr Kelvin celsius_to_kelvin(Celsius t) { return Kelvin{t.value + kKelvinOffset}; }
constexpr Celsius kelvin_to_celsius(Kelvin t) { return Celsius{t.value - kKelvinOffset}; }

// Radiometric capture: row-major skin temperatures in degrees Celsius.
class ThermalFrame {
 public:
  // Throws kInvalidInput on bad dimensions and kRange when a value is
  // non-finite or outside the sensor plausibility window [-40, 120] C.
  ThermalFrame(std::size_t width, std::size_t height, std::vector<double> celsius,
               std::size_t timestamp_index = 0);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t timestamp_index() const noexcept { return timestamp_index_; }
  std::span<const double> data() const noexcept { return data_; }
  double at(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }

  bool operator==(const ThermalFrame&) const = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> data_;
  std::size_t timestamp_index_;
};

// Boolean face/background partition of a frame (true = face).
class FaceMask {
 public:
  FaceMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);
  static FaceMask all(std::size_t width, std::size_t height, bool value);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  bool at(std::size_t row, std::size_t col) const { return bits_[row * width_ + col] != 0; }
  std::size_t count() const noexcept;

  bool operator==(const FaceMask&) const = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> bits_;
};

// Blood perfusion in kg/(m^2 s). Masked-out and flagged (singular) pixels
// hold 0; `flagged` marks the latter so averages can exclude them.
class PerfusionFrame {
 public:
  PerfusionFrame(std::size_t width, std::size_t height, std::vector<double> values,
                 std::vector<std::uint8_t> flagged, bool mask_applied);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const double> data() const noexcept { return data_; }
  std::span<const std::uint8_t> flagged() const noexcept { return flagged_; }
  bool mask_applied() const noexcept { return mask_applied_; }
  double at(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }
  bool is_flagged(std::size_t row, std::size_t col) const {
    return flagged_[row * width_ + col] != 0;
  }

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> data_;
  std::vector<std::uint8_t> flagged_;
  bool mask_applied_;
};

enum class ModelVariant {
  kFull,             // heat-balance inversion evaluated term by term
  kTableConsistent,  // radiative + convective numerator only
};

std::string_view to_string(ModelVariant variant);
ModelVariant parse_model_variant(std::string_view text);

// Constants of the skin heat-balance model. Temperatures are absolute (K).
struct ModelParameters {
  double blood_density = 1060.0;             // kg/m^3, carried but unused
  double blood_specific_heat = 3.78e3;       // J/(kg K)
  double arterial_temp_k = 312.15;
  double core_temp_k = 312.15;
  double skin_conductivity = 0.5;            // W/(m K)
  double air_conductivity = 0.024;           // W/(m K)
  double metabolic_flux = 4.186;             // W/m^2
  double stefan_boltzmann = 5.67e-8;         // W/(m^2 K^4)
  double emissivity = 0.98;
  double countercurrent_ratio = 0.8;
  double prandtl = 0.72;
  double air_kinematic_viscosity = 1.56e-5;  // m^2/s
  double air_thermal_expansion = 3.354e-3;   // 1/K
  double gravity = 9.8;                      // m/s^2
  double convection_constant = 0.27;
  double convection_exponent = 0.25;
  double characteristic_length = 0.170;      // m
  double core_to_skin_distance = 0.085;      // m
  double ambient_temp_k = 297.15;            // 24 C room
  ModelVariant variant = ModelVariant::kFull;
  double output_scale = 1.0;

  // Published constants with the variant's default reporting scale
  // (1 for kFull, 10 for kTableConsistent).
  static ModelParameters defaults(ModelVariant variant = ModelVariant::kFull);

  // Throws kParameter when an invariant does not hold.
  void validate() const;

  bool operator==(const ModelParameters&) const = default;
};

inline constexpr double default_output_scale(ModelVariant variant) {
  return variant == ModelVariant::kTableConsistent ? 10.0 : 1.0;
}

void to_json(nlohmann::json& j, const ModelParameters& params);
void from_json(const nlohmann::json& j, ModelParameters& params);

enum class RoiName {
  kNose,
  kForehead,
  kLeftEye,
  kRightEye,
  kLeftCheek,
  kRightCheek,
  kLeftUpperLip,
  kRightUpperLip,
  kTotalFace,
};

std::string_view to_string(RoiName name);
RoiName parse_roi_name(std::string_view text);
std::string_view display_name(RoiName name);

struct RoiRect {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  bool operator==(const RoiRect&) const = default;
};

inline constexpr std::size_t kPointRoiSide = 10;
inline constexpr std::size_t kForeheadRows = 50;
inline constexpr std::size_t kForeheadCols = 110;

// Default extent of a rect ROI: 10x10 points, 50x110 forehead.
RoiRect default_roi_extent(RoiName name);

// TOTAL_FACE has no rect; it averages over the frame's face mask.
struct RoiEntry {
  RoiName name;
  std::optional<RoiRect> rect;

  bool operator==(const RoiEntry&) const = default;
};

class RoiSet {
 public:
  RoiSet() = default;
  explicit RoiSet(std::vector<RoiEntry> entries);

  std::span<const RoiEntry> entries() const noexcept { return entries_; }
  const RoiEntry* find(RoiName name) const;
  bool empty() const noexcept { return entries_.empty(); }

  // Throws kRange naming the ROI when a rect leaves the frame.
  void validate(std::size_t width, std::size_t height) const;

 private:
  std::vector<RoiEntry> entries_;
};

struct Environment {
  double ambient_c = 24.0;
  double relative_humidity_pct = 63.0;
};

enum class SetLabel { kBaseline, kNegative, kPositive };
std::string_view to_string(SetLabel label);

// One subject's recording: baseline plus the two valence sets.
struct SessionData {
  std::string subject_id;
  std::vector<ThermalFrame> baseline;
  std::vector<ThermalFrame> negative;
  std::vector<ThermalFrame> positive;
  Environment environment;
  RoiSet roi_set;

  const std::vector<ThermalFrame>& frames(SetLabel label) const;
};

inline constexpr std::size_t kNominalBaselineFrames = 60;
inline constexpr std::size_t kNominalValenceFrames = 240;

}  // namespace thermoperf

#endif  // THERMOPERF_CORE_HPP_
