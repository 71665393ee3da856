// Copyright 2026 The ctipon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctipon/telemetry/histogram.hpp"

#include <algorithm>
#include <cmath>

namespace ctipon::telemetry {

std::optional<SimTime> NearestRank(std::span<SimTime const> sorted, double p) {
  if (sorted.empty()) return std::nullopt;
  auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

LatencyHistogram::LatencyHistogram() : counts_(kBins + 2, 0) {
  edges_.reserve(kBins + 1);
  for (int k = 0; k <= kBins; ++k) {
    double us = std::pow(10.0, static_cast<double>(k) / kBinsPerDecade);
    edges_.push_back(static_cast<SimTime>(std::llround(us * sim::kMicrosecond)));
  }
}

std::size_t LatencyHistogram::BinIndex(SimTime value) const {
  if (value < edges_.front()) return 0;
  if (value >= edges_.back()) return kBins + 1;
  auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
  return static_cast<std::size_t>(it - edges_.begin());
}

void LatencyHistogram::Add(SimTime value) {
  ++counts_[BinIndex(value)];
  ++total_;
}

std::optional<SimTime> LatencyHistogram::Percentile(double p) const {
  if (total_ == 0) return std::nullopt;
  auto rank = static_cast<std::uint64_t>(std::ceil(p / 100.0 * static_cast<double>(total_)));
  rank = std::clamp<std::uint64_t>(rank, 1, total_);
  std::uint64_t cum = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    cum += counts_[i];
    if (cum >= rank) {
      if (i == 0) return edges_.front();
      if (i == kBins + 1) return edges_.back();
      return edges_[i];
    }
  }
  return edges_.back();
}

SimTime LatencyHistogram::BinWidth(SimTime value) const {
  std::size_t i = BinIndex(value);
  if (i == 0) return edges_.front();
  if (i == kBins + 1) return edges_[kBins] - edges_[kBins - 1];
  return edges_[i] - edges_[i - 1];
}

Reservoir::Reservoir(std::size_t capacity, std::uint64_t seed, std::string_view stream)
    : capacity_(capacity), rng_(seed, stream) {
  values_.reserve(std::min<std::size_t>(capacity_, 1024));
}

void Reservoir::Add(SimTime value) {
  ++seen_;
  if (values_.size() < capacity_) {
    values_.push_back(value);
    return;
  }
  std::uint64_t j = rng_.Below(seen_);
  if (j < capacity_) values_[j] = value;
}

std::vector<SimTime> Reservoir::Sorted() const {
  std::vector<SimTime> v = values_;
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace ctipon::telemetry
