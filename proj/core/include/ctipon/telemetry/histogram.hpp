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

#ifndef CTIPON_TELEMETRY_HISTOGRAM_HPP_
#define CTIPON_TELEMETRY_HISTOGRAM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ctipon/sim/rng.hpp"
#include "ctipon/sim/time.hpp"

namespace ctipon::telemetry {

using sim::SimTime;

/// Nearest-rank percentile: the value at rank ceil(p/100 * n) of the sorted
/// samples. Absent for an empty set. `sorted` must be ascending.
std::optional<SimTime> NearestRank(std::span<SimTime const> sorted, double p);

/// Fixed log-spaced latency histogram: 10 bins per decade from 1 us to
/// 100 ms, plus one underflow and one overflow bin.
class LatencyHistogram {
 public:
  static constexpr int kBinsPerDecade = 10;
  static constexpr int kDecades = 5;
  static constexpr int kBins = kBinsPerDecade * kDecades;

  LatencyHistogram();

  void Add(SimTime value);
  std::uint64_t total() const { return total_; }

  /// kBins + 1 edges in ns, edges()[0] = 1 us, edges()[kBins] = 100 ms.
  std::vector<SimTime> const& edges() const { return edges_; }
  /// kBins + 2 counts: [0] underflow, [1..kBins] regular bins, [kBins+1] overflow.
  std::vector<std::uint64_t> const& counts() const { return counts_; }

  /// Upper edge of the bin holding the nearest-rank p-th percentile (lower
  /// edge for the overflow bin). Absent if empty.
  std::optional<SimTime> Percentile(double p) const;
  /// Width of the bin containing `value` (underflow: 1 us; overflow: unbounded,
  /// reported as the last regular bin's width).
  SimTime BinWidth(SimTime value) const;

  friend bool operator==(LatencyHistogram const&, LatencyHistogram const&) = default;

 private:
  std::size_t BinIndex(SimTime value) const;

  std::vector<SimTime> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Uniform reservoir (Algorithm R) over SimTime values.
class Reservoir {
 public:
  Reservoir(std::size_t capacity, std::uint64_t seed, std::string_view stream);

  void Add(SimTime value);
  std::uint64_t seen() const { return seen_; }
  std::vector<SimTime> Sorted() const;

 private:
  std::size_t capacity_;
  std::uint64_t seen_ = 0;
  std::vector<SimTime> values_;
  sim::RngStream rng_;
};

}  // namespace ctipon::telemetry

#endif  // CTIPON_TELEMETRY_HISTOGRAM_HPP_
