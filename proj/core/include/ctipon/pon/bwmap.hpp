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

#ifndef CTIPON_PON_BWMAP_HPP_
#define CTIPON_PON_BWMAP_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ctipon/pon/config.hpp"

namespace ctipon::pon {

enum class GrantKind : std::uint8_t {
  kStatusReport,  // sized from reported occupancy
  kCooperative,   // pre-allocated from a CTI entry
  kPoll,          // minimum allocation carrying only a status report
};

struct Allocation {
  TcontId tcont_id = 0;
  std::uint32_t start_offset = 0;
  std::uint32_t grant_bytes = 0;
  GrantKind kind = GrantKind::kStatusReport;

  friend bool operator==(Allocation const&, Allocation const&) = default;
};

struct BwMap {
  std::uint64_t frame_index = 0;
  std::vector<Allocation> allocations;  // sorted by start_offset

  friend bool operator==(BwMap const&, BwMap const&) = default;
};

enum class ViolationKind {
  kOverlap,      // bursts (preamble + grant + guard) intersect
  kGuard,        // burst leaves no preamble room at frame start or guard at frame end
  kCapacity,     // sum of grant + overhead + guard exceeds the frame
  kGranularity,  // grant not a positive multiple of 4 bytes
  kOrdering,     // allocations not sorted by start_offset
};

std::string_view ToString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t index;  // allocation index the violation was detected at
  std::string detail;
};

/// Checks every BwMap invariant. An empty result means the map is valid.
std::vector<Violation> ValidateBwMap(BwMap const& map, PonConfig const& cfg);

// Line-delimited trace: one "frame_index,tcont_id,start_offset,grant_bytes"
// record per allocation, in map order.
inline constexpr std::string_view kTraceHeader = "# frame_index,tcont_id,start_offset,grant_bytes";
std::string FormatTrace(BwMap const& map);

}  // namespace ctipon::pon

#endif  // CTIPON_PON_BWMAP_HPP_
