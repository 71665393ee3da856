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

#include "ctipon/pon/dba.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ctipon::pon {

std::string_view ToString(DbaMode mode) {
  return mode == DbaMode::kCooperative ? "cti" : "sr";
}

DbaMode ParseDbaMode(std::string_view s) {
  if (s == "cti") return DbaMode::kCooperative;
  if (s == "sr") return DbaMode::kStatusReport;
  throw std::invalid_argument("unknown DBA mode '" + std::string(s) + "' (expected cti|sr)");
}

PendingEntry MakePendingEntry(cti::CtiEntry const& entry, SimTime receipt,
                              cti::CtiTiming const& timing, std::uint64_t order) {
  PendingEntry p;
  p.entry = entry;
  p.receipt_time = receipt;
  p.target_time = std::max(cti::EarliestGrantTime(receipt, timing, entry), entry.arrival_end);
  p.order = order;
  p.payload_bytes = entry.expected_bytes;
  return p;
}

std::uint32_t CooperativeGrantBytes(std::uint64_t payload, PonConfig const& cfg) {
  return static_cast<std::uint32_t>(RoundUp4(payload + cfg.fragment_header_bytes));
}

std::vector<FrameLayout::Gap> FrameLayout::Gaps() const {
  std::vector<Gap> gaps;
  std::int64_t const ov = cfg_->burst_overhead_bytes;
  std::int64_t const guard = cfg_->guard_bytes;
  std::int64_t cursor = 0;
  for (auto const& a : placed_) {
    std::int64_t begin = static_cast<std::int64_t>(a.start_offset) - ov;
    if (begin > cursor) gaps.push_back({cursor, begin});
    cursor = std::max(cursor, static_cast<std::int64_t>(a.start_offset) + a.grant_bytes + guard);
  }
  std::int64_t frame = cfg_->usable_bytes();
  if (frame > cursor) gaps.push_back({cursor, frame});
  return gaps;
}

std::optional<std::uint32_t> FrameLayout::FindStart(std::uint64_t min_start,
                                                    std::uint32_t grant) const {
  std::int64_t const ov = cfg_->burst_overhead_bytes;
  std::int64_t const guard = cfg_->guard_bytes;
  for (auto const& g : Gaps()) {
    std::int64_t s = std::max<std::int64_t>(g.begin + ov, static_cast<std::int64_t>(min_start));
    if (s + grant + guard <= g.end) return static_cast<std::uint32_t>(s);
  }
  return std::nullopt;
}

std::uint32_t FrameLayout::LargestFit(std::uint64_t min_start) const {
  std::int64_t const ov = cfg_->burst_overhead_bytes;
  std::int64_t const guard = cfg_->guard_bytes;
  std::int64_t best = 0;
  for (auto const& g : Gaps()) {
    std::int64_t s = std::max<std::int64_t>(g.begin + ov, static_cast<std::int64_t>(min_start));
    best = std::max(best, g.end - guard - s);
  }
  return static_cast<std::uint32_t>(RoundDown4(static_cast<std::uint64_t>(std::max<std::int64_t>(best, 0))));
}

std::uint64_t FrameLayout::FreeBytes() const {
  std::uint64_t free = 0;
  for (auto const& g : Gaps()) free += static_cast<std::uint64_t>(g.end - g.begin);
  return free;
}

bool FrameLayout::HasAllocation(TcontId id) const {
  return std::any_of(placed_.begin(), placed_.end(),
                     [&](Allocation const& a) { return a.tcont_id == id; });
}

void FrameLayout::Place(Allocation a) {
  auto it = std::upper_bound(placed_.begin(), placed_.end(), a,
                             [](Allocation const& x, Allocation const& y) {
                               return x.start_offset < y.start_offset;
                             });
  placed_.insert(it, a);
}

namespace {

__extension__ using Wide = unsigned __int128;

std::vector<std::uint64_t> ProportionalShares(std::span<std::uint64_t const> caps,
                                              std::uint64_t available,
                                              std::uint64_t frame_index) {
  std::vector<std::uint64_t> out(caps.size(), 0);
  Wide total = 0;
  for (auto c : caps) total += c;
  if (total == 0) return out;
  if (total <= available) {
    std::copy(caps.begin(), caps.end(), out.begin());
    return out;
  }
  std::uint64_t given = 0;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    auto share = static_cast<std::uint64_t>(static_cast<Wide>(available) * caps[i] /
                                            total);
    out[i] = RoundDown4(share);
    given += out[i];
  }
  std::uint64_t left = available - given;
  std::size_t const n = caps.size();
  std::size_t const first = static_cast<std::size_t>(frame_index % n);
  bool progressed = true;
  while (left >= kGrantGranularity && progressed) {
    progressed = false;
    for (std::size_t k = 0; k < n && left >= kGrantGranularity; ++k) {
      std::size_t i = (first + k) % n;
      if (out[i] < caps[i]) {
        out[i] += kGrantGranularity;
        left -= kGrantGranularity;
        progressed = true;
      }
    }
  }
  return out;
}

// Places `grant` bytes for a TCONT, splitting across gaps when no single gap
// holds it. Pieces smaller than a fragment header plus one unit are skipped.
void PlaceSplit(FrameLayout& layout, TcontId id, std::uint64_t grant, PonConfig const& cfg) {
  std::uint32_t const min_piece =
      static_cast<std::uint32_t>(RoundUp4(cfg.fragment_header_bytes + 1));
  while (grant > 0) {
    auto whole = layout.FindStart(0, static_cast<std::uint32_t>(grant));
    if (whole) {
      layout.Place({id, *whole, static_cast<std::uint32_t>(grant), GrantKind::kStatusReport});
      return;
    }
    std::uint32_t piece = layout.LargestFit(0);
    if (piece < min_piece) return;
    auto at = layout.FindStart(0, piece);
    layout.Place({id, *at, piece, GrantKind::kStatusReport});
    grant -= piece;
  }
}

}  // namespace

void FillStatusReport(FrameLayout& layout, std::uint64_t frame_index,
                      std::span<TcontDemand const> demands, PonConfig const& cfg) {
  std::vector<TcontDemand> sorted(demands.begin(), demands.end());
  std::sort(sorted.begin(), sorted.end(),
            [](TcontDemand const& a, TcontDemand const& b) { return a.tcont_id < b.tcont_id; });

  std::uint64_t const per_burst = cfg.burst_overhead_bytes + cfg.guard_bytes;
  std::uint64_t const poll_frames = cfg.poll_frames();

  std::vector<TcontDemand const*> participants;
  std::uint64_t polls = 0;
  for (auto const& d : sorted) {
    if (d.demand_bytes > 0) {
      participants.push_back(&d);
    } else if (d.frames_since_alloc >= poll_frames && !layout.HasAllocation(d.tcont_id)) {
      ++polls;
    }
  }

  std::uint64_t const reserved = (participants.size() + polls) * per_burst +
                                 polls * kGrantGranularity;
  std::uint64_t const free = layout.FreeBytes();
  std::uint64_t const available = free > reserved ? RoundDown4(free - reserved) : 0;

  std::vector<std::uint64_t> caps;
  for (auto const* d : participants) caps.push_back(RoundUp4(d->demand_bytes));
  auto shares = ProportionalShares(caps, available, frame_index);
  for (std::size_t i = 0; i < participants.size(); ++i) {
    if (shares[i] > 0) PlaceSplit(layout, participants[i]->tcont_id, shares[i], cfg);
  }

  for (auto const& d : sorted) {
    if (d.frames_since_alloc < poll_frames || layout.HasAllocation(d.tcont_id)) continue;
    if (auto at = layout.FindStart(0, kGrantGranularity)) {
      layout.Place({d.tcont_id, *at, kGrantGranularity, GrantKind::kPoll});
    }
  }
}

BwMap DbaSrStep(std::uint64_t frame_index, std::span<TcontDemand const> demands,
                PonConfig const& cfg) {
  FrameLayout layout(cfg);
  FillStatusReport(layout, frame_index, demands, cfg);
  return BwMap{frame_index, layout.allocations()};
}

CtiStepResult DbaCtiStep(std::uint64_t frame_index, std::deque<PendingEntry>& pending,
                         std::span<TcontDemand const> demands, PonConfig const& cfg) {
  FrameLayout layout(cfg);
  CtiStepResult result;
  SimTime const frame_start = cfg.FrameStart(frame_index);
  SimTime const frame_end = frame_start + cfg.frame_duration;
  std::uint32_t const max_grant = static_cast<std::uint32_t>(
      RoundDown4(cfg.usable_bytes() - cfg.burst_overhead_bytes - cfg.guard_bytes));

  while (!pending.empty() && pending.front().target_time < frame_end) {
    PendingEntry& p = pending.front();
    std::uint64_t min_start = cfg.OffsetAtOrAfter(p.target_time - frame_start);
    std::uint32_t grant = CooperativeGrantBytes(p.payload_bytes, cfg);

    if (grant <= max_grant) {
      auto at = layout.FindStart(min_start, grant);
      if (!at) break;
      layout.Place({p.entry.tcont_id, *at, grant, GrantKind::kCooperative});
      result.placed.push_back({p.entry.tcont_id, *at, grant, p.entry.arrival_start});
      pending.pop_front();
      continue;
    }

    // Oversized burst: grant the largest piece available now, keep the rest.
    std::uint32_t piece = layout.LargestFit(min_start);
    if (piece <= RoundUp4(cfg.fragment_header_bytes)) break;
    auto at = layout.FindStart(min_start, piece);
    layout.Place({p.entry.tcont_id, *at, piece, GrantKind::kCooperative});
    result.placed.push_back({p.entry.tcont_id, *at, piece, p.entry.arrival_start});
    p.payload_bytes -= piece - cfg.fragment_header_bytes;
    break;
  }

  FillStatusReport(layout, frame_index, demands, cfg);
  result.map = BwMap{frame_index, layout.allocations()};
  return result;
}

}  // namespace ctipon::pon
