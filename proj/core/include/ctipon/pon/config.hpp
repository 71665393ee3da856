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

#ifndef CTIPON_PON_CONFIG_HPP_
#define CTIPON_PON_CONFIG_HPP_

#include <cstdint>
#include <string_view>

#include "ctipon/ran/types.hpp"

namespace ctipon::pon {

using sim::SimTime;

inline constexpr SimTime kPropagationPerKm = 5 * sim::kMicrosecond;
inline constexpr std::uint32_t kGrantGranularity = 4;

SimTime PropagationDelay(double fiber_km);

constexpr std::uint64_t RoundUp4(std::uint64_t v) { return (v + 3) / 4 * 4; }
constexpr std::uint64_t RoundDown4(std::uint64_t v) { return v / 4 * 4; }

// XGS-PON upstream parameters. Byte offsets within a frame map linearly onto
// the frame's duration at the usable line rate.
struct PonConfig {
  SimTime frame_duration = 125 * sim::kMicrosecond;
  std::uint64_t upstream_rate_bps = 9'953'280'000ULL;
  std::uint32_t guard_bytes = 64;
  std::uint32_t burst_overhead_bytes = 40;  // preamble + delimiter, precedes start_offset
  SimTime sr_poll_interval = 500 * sim::kMicrosecond;
  SimTime olt_processing = 35 * sim::kMicrosecond;
  std::uint32_t fragment_header_bytes = 8;
  std::uint64_t queue_limit_bytes = 10'000'000;
  // FEC/line-code efficiency folded into the schedulable bytes per frame.
  double efficiency = 1.0;

  /// Raw bytes per frame: upstream_rate * frame_duration / 8.
  std::uint64_t capacity_bytes() const;
  /// Schedulable bytes per frame after the efficiency factor.
  std::uint32_t usable_bytes() const;
  /// Frames between mandatory status-report opportunities (>= 1).
  std::uint64_t poll_frames() const;

  SimTime FrameStart(std::uint64_t frame_index) const {
    return static_cast<SimTime>(frame_index) * frame_duration;
  }
  /// Time of byte `offset` relative to frame start, rounded down / up.
  SimTime OffsetTimeFloor(std::uint64_t offset) const;
  SimTime OffsetTimeCeil(std::uint64_t offset) const;
  /// Smallest offset whose floor time is >= rel.
  std::uint64_t OffsetAtOrAfter(SimTime rel) const;
  /// Line time of `bytes` at the raw rate, rounded up to whole ns.
  SimTime SerializationTime(std::uint64_t bytes) const;

  /// Throws std::invalid_argument. max_propagation is the longest ONU fiber
  /// delay; BWMap delivery must fit within one frame.
  void Validate(SimTime max_propagation) const;
};

}  // namespace ctipon::pon

#endif  // CTIPON_PON_CONFIG_HPP_
