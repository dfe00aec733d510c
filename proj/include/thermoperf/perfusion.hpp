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

// Skin heat-balance model and its per-pixel inversion for blood perfusion.
//
// The surface balance is
//
//   H_r + H_f + H_e = H_m + H_c + H_b,
//
// with radiative loss H_r (Stefan-Boltzmann), natural convection H_f,
// evaporation H_e taken as 0, metabolic flux H_m, core-to-skin conduction
// H_c and perfusion convection H_b = w * alpha * c_b * (T_a - T_s). Solving
// for w gives the kFull variant. kTableConsistent keeps only H_r + H_f in
// the numerator; combined with output_scale = 10 it reproduces the magnitudes
// reported in the published perfusion table.

#ifndef THERMOPERF_PERFUSION_HPP_
#define THERMOPERF_PERFUSION_HPP_

#include <cstddef>
#include <vector>

#include "thermoperf/core.hpp"

namespace thermoperf {

// |T_a - T_s| at or below this many Kelvin is treated as singular.
inline constexpr double kSingularityEpsilonK = 1e-3;

// perfuse_frame fails outright above this fraction of singular masked pixels.
inline constexpr double kMaxSingularFraction = 0.01;

struct FluxBreakdown {
  double radiative = 0.0;    // H_r
  double convective = 0.0;   // H_f
  double evaporative = 0.0;  // H_e, always 0
  double metabolic = 0.0;    // H_m
  double conductive = 0.0;   // H_c
  double perfusion = 0.0;    // H_b
};

double radiative_flux(Kelvin skin, const ModelParameters& params);

// Throws kDomain when the skin is colder than the ambient air.
double convective_flux(Kelvin skin, const ModelParameters& params);

double conductive_flux(Kelvin skin, const ModelParameters& params);

// The group A * k_f * d^(3M-1) * (Pr g beta / nu^2)^M, constant per parameter set.
double convection_coefficient(const ModelParameters& params);

// Throws kSingularity when |T_a - T_s| <= kSingularityEpsilonK and kDomain
// when T_s < T_e. The result includes params.output_scale.
double perfusion_at_pixel(Kelvin skin, const ModelParameters& params);

// All six terms of the balance at `skin`, with H_b evaluated for an
// unscaled perfusion value `omega`.
FluxBreakdown flux_breakdown(Kelvin skin, double omega, const ModelParameters& params);

struct PixelError {
  std::size_t row = 0;
  std::size_t col = 0;
  ErrorKind kind = ErrorKind::kSingularity;
  double celsius = 0.0;
};

struct PerfusionResult {
  PerfusionFrame frame;
  std::vector<PixelError> errors;
};

// Maps perfusion_at_pixel over the masked-in pixels. Pixels that raise are
// zeroed, flagged, and listed in `errors`; the call throws only when more
// than kMaxSingularFraction of the masked pixels fail.
PerfusionResult perfuse_frame(const ThermalFrame& frame, const FaceMask& mask,
                              const ModelParameters& params);

}  // namespace thermoperf

#endif  // THERMOPERF_PERFUSION_HPP_
