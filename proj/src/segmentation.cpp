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

#include "thermoperf/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace thermoperf {

double Histogram::upper_edge(std::size_t bin) const {
  if (bin + 1 >= bin_count) return hi;
  return lo + static_cast<double>(bin + 1) * (hi - lo) / static_cast<double>(bin_count);
}

std::size_t Histogram::bin_of(double value) const {
  const double width = (hi - lo) / static_cast<double>(bin_count);
  double guess = std::ceil((value - lo) / width) - 1.0;
  if (!(guess > 0.0)) guess = 0.0;
  auto bin = std::min(static_cast<std::size_t>(guess), bin_count - 1);
  // Settle against the edges themselves so that bin_of(v) > k exactly when
  // v > upper_edge(k).
  while (bin > 0 && value <= upper_edge(bin - 1)) --bin;
  while (bin + 1 < bin_count && value > upper_edge(bin)) ++bin;
  return bin;
}

std::uint64_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram build_histogram(std::span<const double> values, std::size_t bin_count) {
  if (bin_count < 2) {
    throw Error(ErrorKind::kParameter, "histogram needs at least 2 bins");
  }
  if (values.empty()) {
    throw Error(ErrorKind::kDegenerate, "degenerate histogram: no values");
  }
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  if (!(*max_it > *min_it)) {
    std::ostringstream os;
    os << "degenerate histogram: every value equals " << *min_it;
    throw Error(ErrorKind::kDegenerate, os.str());
  }
  Histogram h;
  h.bin_count = bin_count;
  h.lo = *min_it;
  h.hi = *max_it;
  h.counts.assign(bin_count, 0);
  h.sums.assign(bin_count, 0.0);
  for (double v : values) {
    const auto bin = h.bin_of(v);
    ++h.counts[bin];
    h.sums[bin] += v;
  }
  return h;
}

OtsuResult otsu_threshold(const Histogram& h) {
  const auto n = static_cast<double>(h.total());
  const double grand_sum = std::accumulate(h.sums.begin(), h.sums.end(), 0.0);

  OtsuResult best;
  bool found = false;
  std::uint64_t cold_count = 0;
  double cold_sum = 0.0;
  for (std::size_t k = 0; k + 1 < h.bin_count; ++k) {
    cold_count += h.counts[k];
    cold_sum += h.sums[k];
    const auto warm_count = h.total() - cold_count;
    if (cold_count == 0 || warm_count == 0) continue;
    const double w0 = static_cast<double>(cold_count) / n;
    const double w1 = static_cast<double>(warm_count) / n;
    const double mu0 = cold_sum / static_cast<double>(cold_count);
    const double mu1 = (grand_sum - cold_sum) / static_cast<double>(warm_count);
    const double variance = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (!found || variance > best.between_variance) {
      best = OtsuResult{h.upper_edge(k), k, variance};
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorKind::kDegenerate, "degenerate histogram: no boundary splits the values");
  }
  return best;
}

OtsuResult otsu_threshold(const ThermalFrame& frame, std::size_t bin_count) {
  return otsu_threshold(build_histogram(frame.data(), bin_count));
}

FaceMask segment_face(const ThermalFrame& frame, const SegmentOptions& options) {
  OtsuResult otsu;
  try {
    otsu = otsu_threshold(frame, options.bin_count);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kDegenerate) throw Error(ErrorKind::kSegmentation, e.what());
    throw;
  }
  const auto temps = frame.data();
  std::vector<std::uint8_t> bits(temps.size());
  std::transform(temps.begin(), temps.end(), bits.begin(),
                 [t = otsu.threshold](double v) { return v > t ? 1 : 0; });
  FaceMask mask(frame.width(), frame.height(), std::move(bits));
  if (options.largest_component) mask = largest_connected_component(mask);
  if (mask.count() == 0) {
    throw Error(ErrorKind::kSegmentation, "segmentation produced an empty face class");
  }
  return mask;
}

FaceMask largest_connected_component(const FaceMask& mask) {
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  const auto bits = mask.bits();
  std::vector<std::uint32_t> label(bits.size(), 0);
  std::vector<std::size_t> stack;
  std::uint32_t next = 0;
  std::uint32_t best_label = 0;
  std::size_t best_size = 0;

  for (std::size_t start = 0; start < bits.size(); ++start) {
    if (!bits[start] || label[start]) continue;
    ++next;
    std::size_t size = 0;
    stack.push_back(start);
    label[start] = next;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++size;
      const std::size_t r = i / w;
      const std::size_t c = i % w;
      const auto visit = [&](std::size_t j) {
        if (bits[j] && !label[j]) {
          label[j] = next;
          stack.push_back(j);
        }
      };
      if (r > 0) visit(i - w);
      if (r + 1 < h) visit(i + w);
      if (c > 0) visit(i - 1);
      if (c + 1 < w) visit(i + 1);
    }
    // Strict comparison: the earliest component (raster order) wins ties.
    if (size > best_size) {
      best_size = size;
      best_label = next;
    }
  }

  std::vector<std::uint8_t> out(bits.size(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (best_label && label[i] == best_label);
  return FaceMask(w, h, std::move(out));
}

}  // namespace thermoperf
