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

#ifndef THERMOPERF_SEGMENTATION_HPP_
#define THERMOPERF_SEGMENTATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "thermoperf/core.hpp"

namespace thermoperf {

inline constexpr std::size_t kDefaultBinCount = 256;

// Equal-width histogram over [lo, hi]. Bin k covers (edge(k-1), edge(k)],
// bin 0 additionally holds lo itself; edge(k) = lo + (k + 1) * (hi - lo) / bins.
// Alongside the counts it keeps per-bin sums of the raw values so class
// means are exact rather than bin-centre approximations.
struct Histogram {
  std::size_t bin_count = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;
  std::vector<double> sums;

  double upper_edge(std::size_t bin) const;
  std::size_t bin_of(double value) const;
  std::uint64_t total() const;
};

// Throws kDegenerate when every value is identical and kParameter when
// bin_count < 2.
Histogram build_histogram(std::span<const double> values, std::size_t bin_count);

struct OtsuResult {
  double threshold = 0.0;       // upper edge of `bin`, degrees C
  std::size_t bin = 0;          // last bin of the cold class
  double between_variance = 0;  // w0 * w1 * (mu0 - mu1)^2
};

// Maximizes the between-class variance over every bin boundary; ties keep
// the lowest boundary.
OtsuResult otsu_threshold(const ThermalFrame& frame, std::size_t bin_count = kDefaultBinCount);
OtsuResult otsu_threshold(const Histogram& histogram);

struct SegmentOptions {
  std::size_t bin_count = kDefaultBinCount;
  // Keep only the largest 4-connected face component.
  bool largest_component = false;
};

// The warm class (temperature above the Otsu threshold) is the face.
// Throws kSegmentation on a degenerate histogram or an empty warm class.
FaceMask segment_face(const ThermalFrame& frame, const SegmentOptions& options = {});

FaceMask largest_connected_component(const FaceMask& mask);

}  // namespace thermoperf

#endif  // THERMOPERF_SEGMENTATION_HPP_
