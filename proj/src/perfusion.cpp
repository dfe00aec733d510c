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

#include "thermoperf/perfusion.hpp"

#include <cmath>
#include <sstream>

namespace thermoperf {
namespace {

void require_finite(Kelvin skin) {
  if (!std::isfinite(skin.value) || skin.value <= 0.0) {
    std::ostringstream os;
    os << "skin temperature " << skin.value << " K is not a finite absolute temperature";
    throw Error(ErrorKind::kInvalidInput, os.str());
  }
}

double pow4(double x) {
  const double x2 = x * x;
  return x2 * x2;
}

// Perfusion with a precomputed convection coefficient; shared by the scalar
// and frame entry points so both follow the same arithmetic.
double perfusion_with_coefficient(double skin_k, double convection_coeff,
                                  const ModelParameters& p) {
  const double gap = p.arterial_temp_k - skin_k;
  if (std::abs(gap) <= kSingularityEpsilonK) {
    std::ostringstream os;
    os << "skin temperature " << skin_k << " K is within " << kSingularityEpsilonK
       << " K of the arterial temperature";
    throw Error(ErrorKind::kSingularity, os.str());
  }
  const double excess = skin_k - p.ambient_temp_k;
  if (excess < 0.0) {
    std::ostringstream os;
    os << "skin temperature " << skin_k << " K is below ambient " << p.ambient_temp_k << " K";
    throw Error(ErrorKind::kDomain, os.str());
  }
  const double radiative =
      p.emissivity * p.stefan_boltzmann * (pow4(skin_k) - pow4(p.ambient_temp_k));
  const double convective = convection_coeff * std::pow(excess, p.convection_exponent + 1.0);
  double numerator = radiative + convective;
  if (p.variant == ModelVariant::kFull) {
    numerator -= p.skin_conductivity * gap / p.core_to_skin_distance + p.metabolic_flux;
  }
  return numerator / (p.countercurrent_ratio * p.blood_specific_heat * gap) * p.output_scale;
}

}  // namespace

double radiative_flux(Kelvin skin, const ModelParameters& params) {
  require_finite(skin);
  return params.emissivity * params.stefan_boltzmann *
         (pow4(skin.value) - pow4(params.ambient_temp_k));
}

double convection_coefficient(const ModelParameters& p) {
  const double m = p.convection_exponent;
  const double grashof_group =
      p.prandtl * p.gravity * p.air_thermal_expansion /
      (p.air_kinematic_viscosity * p.air_kinematic_viscosity);
  return p.convection_constant * p.air_conductivity *
         std::pow(p.characteristic_length, 3.0 * m - 1.0) * std::pow(grashof_group, m);
}

double convective_flux(Kelvin skin, const ModelParameters& params) {
  require_finite(skin);
  const double excess = skin.value - params.ambient_temp_k;
  if (excess < 0.0) {
    std::ostringstream os;
    os << "natural convection is undefined for skin " << skin.value << " K below ambient "
       << params.ambient_temp_k << " K";
    throw Error(ErrorKind::kDomain, os.str());
  }
  return convection_coefficient(params) *
         std::pow(excess, params.convection_exponent + 1.0);
}

double conductive_flux(Kelvin skin, const ModelParameters& params) {
  require_finite(skin);
  return params.skin_conductivity * (params.core_temp_k - skin.value) /
         params.core_to_skin_distance;
}

double perfusion_at_pixel(Kelvin skin, const ModelParameters& params) {
  require_finite(skin);
  return perfusion_with_coefficient(skin.value, convection_coefficient(params), params);
}

FluxBreakdown flux_breakdown(Kelvin skin, double omega, const ModelParameters& params) {
  FluxBreakdown f;
  f.radiative = radiative_flux(skin, params);
  f.convective = convective_flux(skin, params);
  f.metabolic = params.metabolic_flux;
  f.conductive = conductive_flux(skin, params);
  f.perfusion = omega * params.countercurrent_ratio * params.blood_specific_heat *
                (params.arterial_temp_k - skin.value);
  return f;
}

PerfusionResult perfuse_frame(const ThermalFrame& frame, const FaceMask& mask,
                              const ModelParameters& params) {
  if (mask.width() != frame.width() || mask.height() != frame.height()) {
    throw Error(ErrorKind::kInvalidInput, "face mask dimensions differ from the thermal frame");
  }
  params.validate();
  const double coeff = convection_coefficient(params);
  const auto temps = frame.data();
  const auto bits = mask.bits();
  std::vector<double> values(temps.size(), 0.0);
  std::vector<std::uint8_t> flagged(temps.size(), 0);
  std::vector<PixelError> errors;
  std::size_t masked = 0;

  for (std::size_t i = 0; i < temps.size(); ++i) {
    if (!bits[i]) continue;
    ++masked;
    const double skin_k = celsius_to_kelvin(Celsius{temps[i]}).value;
    try {
      values[i] = perfusion_with_coefficient(skin_k, coeff, params);
    } catch (const Error& e) {
      flagged[i] = 1;
      errors.push_back(PixelError{i / frame.width(), i % frame.width(), e.kind(), temps[i]});
    }
  }

  if (!errors.empty() &&
      static_cast<double>(errors.size()) > kMaxSingularFraction * static_cast<double>(masked)) {
    const auto& first = errors.front();
    std::ostringstream os;
    os << errors.size() << " of " << masked
       << " masked pixels could not be inverted (first at row " << first.row << ", col "
       << first.col << ": " << to_string(first.kind) << " at " << first.celsius << " C)";
    throw Error(first.kind, os.str());
  }
  return PerfusionResult{
      PerfusionFrame(frame.width(), frame.height(), std::move(values), std::move(flagged), true),
      std::move(errors)};
}

}  // namespace thermoperf
