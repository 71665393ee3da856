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

#ifndef CTIPON_PON_DBA_HPP_
#define CTIPON_PON_DBA_HPP_

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ctipon/cti/report.hpp"
#include "ctipon/pon/bwmap.hpp"
#include "ctipon/pon/config.hpp"

namespace ctipon::pon {

enum class DbaMode : std::uint8_t { kStatusReport, kCooperative };

std::string_view ToString(DbaMode mode);  // "sr" / "cti"
DbaMode ParseDbaMode(std::string_view s);  // throws std::invalid_argument

// Status-report demand the OLT attributes to one TCONT for the frame being
// computed: last reported occupancy minus grants already issued against it.
struct TcontDemand {
  TcontId tcont_id = 0;
  std::uint64_t demand_bytes = 0;
  std::uint64_t frames_since_alloc = 0;
};

// A CTI entry awaiting placement. target_time is the earliest instant a
// grant may start: the later of EarliestGrantTime() and the end of the
// arrival window, so the burst is queued whatever its jitter.
struct PendingEntry {
  cti::CtiEntry entry;
  SimTime receipt_time = 0;
  SimTime target_time = 0;
  std::uint64_t order = 0;
  std::uint32_t payload_bytes = 0;  // still to be granted
};

PendingEntry MakePendingEntry(cti::CtiEntry const& entry, SimTime receipt,
                              cti::CtiTiming const& timing, std::uint64_t order);

/// Grant bytes carrying `payload` as one fragment: payload plus header,
/// rounded up to the 4-byte granularity.
std::uint32_t CooperativeGrantBytes(std::uint64_t payload, PonConfig const& cfg);

/// Free-space bookkeeping for one frame under construction.
class FrameLayout {
 public:
  explicit FrameLayout(PonConfig const& cfg) : cfg_(&cfg) {}

  /// Earliest start_offset >= min_start where `grant` fits, if any.
  std::optional<std::uint32_t> FindStart(std::uint64_t min_start, std::uint32_t grant) const;
  /// Largest 4-byte-multiple grant placeable at some start >= min_start.
  std::uint32_t LargestFit(std::uint64_t min_start) const;
  /// Sum of all free gap lengths.
  std::uint64_t FreeBytes() const;
  bool HasAllocation(TcontId id) const;

  void Place(Allocation a);
  std::vector<Allocation> const& allocations() const { return placed_; }

 private:
  struct Gap {
    std::int64_t begin;
    std::int64_t end;
  };
  std::vector<Gap> Gaps() const;

  PonConfig const* cfg_;
  std::vector<Allocation> placed_;  // sorted by start_offset
};

/// Status-report fill into whatever space `layout` leaves free.
///
/// TCONTs with demand share the free bytes (after per-burst overhead and
/// guard) in proportion to demand; each is capped at its rounded-up demand,
/// and leftover 4-byte units go round-robin from a pointer that rotates with
/// frame_index. A TCONT with no allocation for poll_frames() frames gets a
/// 4-byte poll. Grants that do not fit one gap are split across gaps.
void FillStatusReport(FrameLayout& layout, std::uint64_t frame_index,
                      std::span<TcontDemand const> demands, PonConfig const& cfg);

/// Baseline DBA: status-report fill of an empty frame.
BwMap DbaSrStep(std::uint64_t frame_index, std::span<TcontDemand const> demands,
                PonConfig const& cfg);

struct CooperativePlacement {
  TcontId tcont_id = 0;
  std::uint32_t start_offset = 0;
  std::uint32_t grant_bytes = 0;
  SimTime arrival_start = 0;
};

struct CtiStepResult {
  BwMap map;
  std::vector<CooperativePlacement> placed;
};

/// Cooperative DBA for one frame.
///
/// Pending entries (kept sorted by target_time) whose target falls before
/// the end of this frame are placed first, in order, each at the earliest
/// offset at or after its target. The first entry that does not fit stops
/// placement; it and all later entries carry over so order is preserved.
/// Entries larger than any single frame are granted in pieces. Remaining
/// space goes to FillStatusReport(). Placed entries are removed from
/// `pending`.
CtiStepResult DbaCtiStep(std::uint64_t frame_index, std::deque<PendingEntry>& pending,
                         std::span<TcontDemand const> demands, PonConfig const& cfg);

}  // namespace ctipon::pon

#endif  // CTIPON_PON_DBA_HPP_
