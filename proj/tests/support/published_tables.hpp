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

// Published per-subject ROI summaries for three volunteers: set means with
// standard deviations, then the printed absolute and percentage differences
// for the negative and positive valence.

#ifndef THERMOPERF_TESTS_SUPPORT_PUBLISHED_TABLES_HPP_
#define THERMOPERF_TESTS_SUPPORT_PUBLISHED_TABLES_HPP_

#include "thermoperf/core.hpp"

namespace thermoperf::testing {

struct PublishedRow {
  const char* subject;
  RoiName roi;
  double baseline, baseline_sd;
  double negative, negative_sd;
  double positive, positive_sd;
  double delta_negative, pct_negative;
  double delta_positive, pct_positive;
};

inline constexpr PublishedRow kTemperatureRows[] = {
    {"Man 1", RoiName::kNose, 34.46, 0.14, 34.18, 0.12, 33.91, 0.20, -0.28, -0.82, -0.55, -1.59},
    {"Man 1", RoiName::kForehead, 34.83, 0.02, 34.76, 0.04, 34.87, 0.02, -0.07, -0.20, 0.04, 0.11},
    {"Man 1", RoiName::kLeftEye, 35.73, 0.14, 35.67, 0.14, 35.81, 0.11, -0.06, -0.17, 0.08, 0.22},
    {"Man 1", RoiName::kRightEye, 35.66, 0.28, 35.57, 0.26, 35.78, 0.12, -0.10, -0.28, 0.12, 0.33},
    {"Man 1", RoiName::kLeftCheek, 34.44, 0.12, 34.25, 0.12, 34.71, 0.06, -0.19, -0.55, 0.27, 0.78},
    {"Man 1", RoiName::kRightCheek, 34.82, 0.06, 34.69, 0.09, 34.81, 0.03, -0.13, -0.37, -0.01, -0.03},
    {"Man 1", RoiName::kLeftUpperLip, 34.70, 0.06, 34.75, 0.04, 34.70, 0.09, 0.05, 0.14, 0.00, 0.00},
    {"Man 1", RoiName::kRightUpperLip, 34.52, 0.03, 34.50, 0.06, 34.52, 0.03, -0.02, -0.06, 0.00, 0.00},
    {"Man 1", RoiName::kTotalFace, 33.81, 0.02, 33.74, 0.04, 33.77, 0.02, -0.07, -0.21, -0.05, -0.14},
    {"Woman 1", RoiName::kNose, 34.19, 0.35, 33.84, 0.24, 34.19, 0.21, -0.34, -0.99, 0.00, 0.00},
    {"Woman 1", RoiName::kForehead, 35.52, 0.04, 35.46, 0.10, 35.47, 0.04, -0.06, -0.17, -0.05, -0.14},
    {"Woman 1", RoiName::kLeftEye, 36.11, 0.47, 36.11, 0.19, 35.98, 0.09, 0.00, 0.00, -0.13, -0.36},
    {"Woman 1", RoiName::kRightEye, 35.87, 0.88, 36.02, 0.38, 36.03, 0.19, 0.14, 0.39, 0.16, 0.44},
    {"Woman 1", RoiName::kLeftCheek, 35.24, 0.17, 35.26, 0.10, 35.09, 0.06, 0.02, 0.06, -0.15, -0.42},
    {"Woman 1", RoiName::kRightCheek, 35.47, 0.17, 35.46, 0.09, 35.49, 0.06, -0.01, 0.03, 0.02, 0.06},
    {"Woman 1", RoiName::kLeftUpperLip, 34.55, 0.17, 34.40, 0.26, 35.06, 0.09, -0.15, -0.43, 0.51, 1.48},
    {"Woman 1", RoiName::kRightUpperLip, 35.12, 0.37, 34.81, 0.24, 35.35, 0.09, -0.31, -0.88, 0.23, 0.65},
    {"Woman 1", RoiName::kTotalFace, 33.73, 0.05, 33.73, 0.07, 33.75, 0.04, 0.00, 0.00, 0.02, 0.06},
    {"Woman 2", RoiName::kNose, 34.61, 0.22, 34.41, 0.18, 34.46, 0.29, -0.20, -0.58, -0.15, -0.43},
    {"Woman 2", RoiName::kForehead, 35.09, 0.04, 34.83, 0.02, 34.77, 0.03, -0.26, -0.74, -0.32, -0.91},
    {"Woman 2", RoiName::kLeftEye, 36.17, 0.06, 35.83, 0.11, 35.69, 0.18, -0.34, -0.94, -0.48, -1.33},
    {"Woman 2", RoiName::kRightEye, 35.87, 0.24, 35.52, 0.14, 35.46, 0.40, -0.36, -1.00, -0.41, -1.14},
    {"Woman 2", RoiName::kLeftCheek, 34.38, 0.22, 34.14, 0.26, 34.24, 0.26, -0.23, -0.67, -0.13, -0.40},
    {"Woman 2", RoiName::kRightCheek, 34.84, 0.17, 34.69, 0.11, 34.48, 0.41, -0.15, -0.43, -0.36, -1.04},
    {"Woman 2", RoiName::kLeftUpperLip, 35.01, 0.12, 34.86, 0.09, 34.51, 0.12, -0.15, -0.43, -0.50, -1.43},
    {"Woman 2", RoiName::kRightUpperLip, 35.09, 0.07, 35.08, 0.12, 34.72, 0.13, -0.01, -0.03, -0.37, -1.05},
    {"Woman 2", RoiName::kTotalFace, 34.02, 0.04, 33.73, 0.08, 33.57, 0.04, -0.28, -0.82, -0.45, -1.32},
};

// Perfusion in units of 1e-2 kg/(m^2 s).
inline constexpr PublishedRow kPerfusionRows[] = {
    {"Man 1", RoiName::kNose, 6.05, 0.28, 5.53, 0.21, 5.09, 0.28, -0.53, -8.76, -0.96, -15.87},
    {"Man 1", RoiName::kForehead, 6.85, 0.05, 6.69, 0.09, 6.92, 0.04, -0.16, -2.33, 0.07, 1.02},
    {"Man 1", RoiName::kLeftEye, 9.47, 0.46, 9.26, 0.47, 9.77, 0.38, -0.21, -2.17, 0.30, 3.16},
    {"Man 1", RoiName::kRightEye, 9.32, 0.95, 8.98, 0.81, 9.70, 0.43, -0.34, -3.64, 0.38, 4.08},
    {"Man 1", RoiName::kLeftCheek, 6.01, 0.23, 5.66, 0.21, 6.56, 0.13, -0.35, -5.82, 0.55, 9.15},
    {"Man 1", RoiName::kRightCheek, 6.79, 0.15, 6.51, 0.19, 6.76, 0.06, -0.28, -4.12, -0.03, -0.44},
    {"Man 1", RoiName::kLeftUpperLip, 6.53, 0.13, 6.64, 0.09, 6.54, 0.18, 0.11, 1.68, 0.01, 0.15},
    {"Man 1", RoiName::kRightUpperLip, 6.15, 0.06, 6.10, 0.11, 6.15, 0.06, -0.05, -0.81, 0.00, 0.00},
    {"Man 1", RoiName::kTotalFace, 5.32, 0.03, 5.19, 0.08, 5.24, 0.03, -0.13, -2.44, -0.08, -1.50},
    {"Woman 1", RoiName::kNose, 5.60, 0.79, 5.00, 0.38, 5.55, 0.36, -0.60, -10.71, -0.05, -0.89},
    {"Woman 1", RoiName::kForehead, 8.75, 0.14, 8.55, 0.31, 8.57, 0.13, -0.20, -2.28, -0.18, -2.06},
    {"Woman 1", RoiName::kLeftEye, 11.36, 1.71, 11.13, 0.88, 10.50, 0.33, -0.23, -2.02, -0.86, -7.57},
    {"Woman 1", RoiName::kRightEye, 10.93, 3.09, 10.98, 1.47, 10.87, 0.74, 0.05, 0.46, -0.06, -0.55},
    {"Woman 1", RoiName::kLeftCheek, 7.89, 0.37, 7.92, 0.27, 7.45, 0.17, 0.03, 0.38, -0.44, -5.58},
    {"Woman 1", RoiName::kRightCheek, 8.57, 0.55, 8.55, 0.30, 8.63, 0.19, -0.02, -0.23, 0.06, 0.70},
    {"Woman 1", RoiName::kLeftUpperLip, 6.24, 0.35, 5.94, 0.49, 7.39, 0.22, -0.30, -4.81, 1.15, 18.43},
    {"Woman 1", RoiName::kRightUpperLip, 7.63, 0.91, 6.81, 0.54, 8.18, 0.27, -0.82, -10.75, 0.55, 7.21},
    {"Woman 1", RoiName::kTotalFace, 5.72, 0.09, 5.69, 0.16, 5.75, 0.09, -0.03, -0.52, 0.03, 0.52},
    {"Woman 2", RoiName::kNose, 6.67, 0.52, 6.63, 0.84, 6.16, 0.49, -0.04, -0.60, -0.51, -7.64},
    {"Woman 2", RoiName::kForehead, 7.61, 0.15, 6.92, 0.12, 6.69, 0.06, -0.69, -9.07, -0.92, -12.09},
    {"Woman 2", RoiName::kLeftEye, 11.28, 0.49, 9.65, 0.91, 9.11, 0.81, -1.63, -14.45, -2.17, -19.24},
    {"Woman 2", RoiName::kRightEye, 9.49, 1.26, 8.27, 1.00, 8.42, 1.26, -1.22, -12.86, -1.07, -11.28},
    {"Woman 2", RoiName::kLeftCheek, 5.76, 0.39, 5.27, 0.51, 5.53, 0.52, -0.49, -8.51, -0.23, -3.99},
    {"Woman 2", RoiName::kRightCheek, 7.19, 0.52, 6.80, 0.52, 6.20, 0.70, -0.39, -5.42, -0.99, -13.77},
    {"Woman 2", RoiName::kLeftUpperLip, 7.33, 0.40, 6.85, 0.28, 6.12, 0.24, -0.48, -6.55, -1.21, -16.51},
    {"Woman 2", RoiName::kRightUpperLip, 7.45, 0.32, 7.41, 0.27, 6.55, 0.27, -0.04, -0.53, -0.90, -12.08},
    {"Woman 2", RoiName::kTotalFace, 5.86, 0.10, 5.40, 0.14, 5.11, 0.05, -0.46, -7.85, -0.75, -12.80},
};

}  // namespace thermoperf::testing

#endif  // THERMOPERF_TESTS_SUPPORT_PUBLISHED_TABLES_HPP_
