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

#include "ctipon/pon/bwmap.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace ctipon::pon {

std::string_view ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kOverlap: return "overlap";
    case ViolationKind::kGuard: return "guard";
    case ViolationKind::kCapacity: return "capacity";
    case ViolationKind::kGranularity: return "granularity";
    case ViolationKind::kOrdering: return "ordering";
  }
  return "unknown";
}

std::vector<Violation> ValidateBwMap(BwMap const& map, PonConfig const& cfg) {
  std::vector<Violation> out;
  auto const& allocs = map.allocations;
  std::int64_t const frame = cfg.usable_bytes();
  std::int64_t const ov = cfg.burst_overhead_bytes;
  std::int64_t const guard = cfg.guard_bytes;

  std::uint64_t used = 0;
  for (std::size_t i = 0; i < allocs.size(); ++i) {
    auto const& a = allocs[i];
    if (a.grant_bytes < kGrantGranularity || a.grant_bytes % kGrantGranularity != 0) {
      out.push_back({ViolationKind::kGranularity, i,
                     "grant " + std::to_string(a.grant_bytes) + " B for tcont " +
                         std::to_string(a.tcont_id)});
    }
    std::int64_t begin = static_cast<std::int64_t>(a.start_offset) - ov;
    std::int64_t end = static_cast<std::int64_t>(a.start_offset) + a.grant_bytes + guard;
    if (begin < 0 || end > frame) {
      out.push_back({ViolationKind::kGuard, i,
                     "burst [" + std::to_string(begin) + ", " + std::to_string(end) +
                         ") outside frame of " + std::to_string(frame) + " B"});
    }
    if (i > 0 && a.start_offset < allocs[i - 1].start_offset) {
      out.push_back({ViolationKind::kOrdering, i, "start_offset decreases"});
    }
    used += a.grant_bytes + static_cast<std::uint64_t>(ov + guard);
  }
  if (used > static_cast<std::uint64_t>(frame)) {
    out.push_back({ViolationKind::kCapacity, allocs.size(),
                   std::to_string(used) + " B scheduled in a " + std::to_string(frame) +
                       " B frame"});
  }

  // Sweep the bursts by start; any burst beginning before the furthest end
  // seen so far intersects an earlier one.
  std::vector<std::size_t> idx(allocs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return allocs[x].start_offset < allocs[y].start_offset;
  });
  std::int64_t reach = std::numeric_limits<std::int64_t>::min();
  for (std::size_t k : idx) {
    auto const& a = allocs[k];
    std::int64_t begin = static_cast<std::int64_t>(a.start_offset) - ov;
    std::int64_t end = static_cast<std::int64_t>(a.start_offset) + a.grant_bytes + guard;
    if (begin < reach) {
      out.push_back({ViolationKind::kOverlap, k,
                     "tcont " + std::to_string(a.tcont_id) + " burst at " +
                         std::to_string(a.start_offset) + " overlaps an earlier burst"});
    }
    reach = std::max(reach, end);
  }
  return out;
}

std::string FormatTrace(BwMap const& map) {
  std::string out;
  for (auto const& a : map.allocations) {
    out += std::to_string(map.frame_index);
    out += ',';
    out += std::to_string(a.tcont_id);
    out += ',';
    out += std::to_string(a.start_offset);
    out += ',';
    out += std::to_string(a.grant_bytes);
    out += '\n';
  }
  return out;
}

}  // namespace ctipon::pon
