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

#include "ctipon/pon/olt.hpp"

#include <algorithm>

namespace ctipon::pon {

Olt::Olt(PonConfig cfg, cti::CtiTiming timing, std::vector<TcontInfo> const& tconts,
         DbaMode mode)
    : cfg_(cfg), timing_(timing), mode_(mode) {
  for (auto const& t : tconts) tconts_[t.id].info = t;
}

void Olt::set_mode(DbaMode mode) {
  if (mode != DbaMode::kCooperative) pending_.clear();
  mode_ = mode;
}

void Olt::ReceiveCti(cti::CtiReport const& report, SimTime receipt) {
  receiver_.Observe(report.seq);
  if (mode_ != DbaMode::kCooperative) return;
  for (auto const& e : report.entries) {
    if (!tconts_.contains(e.tcont_id)) continue;
    PendingEntry p = MakePendingEntry(e, receipt, timing_, next_order_++);
    auto it = std::upper_bound(pending_.begin(), pending_.end(), p,
                               [](PendingEntry const& a, PendingEntry const& b) {
                                 if (a.target_time != b.target_time) {
                                   return a.target_time < b.target_time;
                                 }
                                 return a.order < b.order;
                               });
    pending_.insert(it, p);
  }
}

void Olt::ReceiveStatus(StatusReportMsg const& msg) {
  auto it = tconts_.find(msg.tcont_id);
  if (it == tconts_.end()) return;
  it->second.inbound.push_back(msg);
}

std::uint64_t Olt::DemandFor(TcontState& st) const {
  if (!st.latest) return 0;
  SimTime const r = st.latest->generated_at;
  while (!st.issued.empty() && st.issued.front().burst_start < r) st.issued.pop_front();

  std::uint64_t covered = 0;
  for (auto const& g : st.issued) {
    if (g.kind == GrantKind::kStatusReport ||
        (g.kind == GrantKind::kCooperative && g.arrival_start <= r)) {
      covered += g.bytes;
    }
  }
  for (auto const& p : pending_) {
    if (p.entry.tcont_id == st.info.id && p.entry.arrival_start <= r) {
      covered += CooperativeGrantBytes(p.payload_bytes, cfg_);
    }
  }
  return st.latest->value > covered ? st.latest->value - covered : 0;
}

BwMap Olt::ComputeMap(std::uint64_t frame_index, SimTime now) {
  std::uint64_t const poll_frames = cfg_.poll_frames();
  std::vector<TcontDemand> demands;
  demands.reserve(tconts_.size());
  for (auto& [id, st] : tconts_) {
    // Reports reach the OLT in generation order per TCONT.
    while (!st.inbound.empty() && st.inbound.front().available_at <= now) {
      st.latest = st.inbound.front();
      st.inbound.pop_front();
    }
    TcontDemand d;
    d.tcont_id = id;
    d.demand_bytes = DemandFor(st);
    d.frames_since_alloc = st.last_alloc_frame && *st.last_alloc_frame <= frame_index
                               ? frame_index - *st.last_alloc_frame
                               : poll_frames;
    demands.push_back(d);
  }

  BwMap map;
  std::vector<CooperativePlacement> placed;
  if (mode_ == DbaMode::kCooperative) {
    auto r = DbaCtiStep(frame_index, pending_, demands, cfg_);
    map = std::move(r.map);
    placed = std::move(r.placed);
  } else {
    map = DbaSrStep(frame_index, demands, cfg_);
  }

  SimTime const frame_start = cfg_.FrameStart(frame_index);
  for (auto const& a : map.allocations) {
    auto& st = tconts_[a.tcont_id];
    st.last_alloc_frame = frame_index;
    if (a.kind == GrantKind::kPoll) continue;
    Issued g{frame_start + cfg_.OffsetTimeFloor(a.start_offset), a.grant_bytes, a.kind, 0};
    if (a.kind == GrantKind::kCooperative) {
      auto it = std::find_if(placed.begin(), placed.end(), [&](CooperativePlacement const& c) {
        return c.tcont_id == a.tcont_id && c.start_offset == a.start_offset;
      });
      if (it != placed.end()) g.arrival_start = it->arrival_start;
      cooperative_granted_ += a.grant_bytes;
    }
    st.issued.push_back(g);
  }
  return map;
}

}  // namespace ctipon::pon
