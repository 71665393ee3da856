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

#include "ctipon/cti/report.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ctipon/ran/scheduler.hpp"

namespace ctipon::cti {

void CtiTiming::Validate() const {
  if (lead_time < 0) throw std::invalid_argument("lead_time must be >= 0");
  if (transport_delay < 0) throw std::invalid_argument("transport_delay must be >= 0");
  if (jitter_margin < 0) throw std::invalid_argument("jitter_margin must be >= 0");
}

UnmappedUeError::UnmappedUeError(UeId ue)
    : std::runtime_error("ue " + std::to_string(ue) + " has no TCONT mapping"), ue_(ue) {}

std::vector<FronthaulBurst> BurstsForGrants(std::span<ran::UplinkGrant const> grants,
                                            ran::SlotConfig const& cfg,
                                            ran::FronthaulFormat const& fmt,
                                            std::map<UeId, TcontId> const& mapping) {
  std::vector<FronthaulBurst> out;
  out.reserve(grants.size());
  for (auto const& g : grants) {
    auto it = mapping.find(g.ue_id);
    if (it == mapping.end()) throw UnmappedUeError(g.ue_id);
    out.push_back({it->second, ran::FronthaulBytesForGrant(g, fmt), ran::ArrivalTime(g, cfg)});
  }
  return out;
}

CtiReport BuildReportFromBursts(std::span<FronthaulBurst const> bursts, SimTime report_time,
                                SimTime jitter_margin) {
  std::map<TcontId, CtiEntry> by_tcont;
  for (auto const& b : bursts) {
    if (b.bytes == 0) continue;
    auto [it, fresh] = by_tcont.try_emplace(b.tcont_id);
    CtiEntry& e = it->second;
    if (fresh) {
      e.tcont_id = b.tcont_id;
      e.arrival_start = b.arrival;
      e.arrival_end = b.arrival;
    }
    std::uint64_t total = e.expected_bytes + b.bytes;
    if (total > std::numeric_limits<std::uint32_t>::max()) {
      throw std::overflow_error("expected_bytes overflows 32 bits for tcont " +
                                std::to_string(b.tcont_id));
    }
    e.expected_bytes = static_cast<std::uint32_t>(total);
    e.arrival_start = std::min(e.arrival_start, b.arrival);
    e.arrival_end = std::max(e.arrival_end, b.arrival);
  }
  CtiReport report;
  report.report_time = report_time;
  for (auto& [_, e] : by_tcont) {
    e.arrival_start = std::max<SimTime>(0, e.arrival_start - jitter_margin);
    e.arrival_end += jitter_margin;
    report.entries.push_back(e);
  }
  return report;
}

CtiReport BuildReport(std::span<ran::UplinkGrant const> grants, std::int64_t slot_index,
                      ran::SlotConfig const& cfg, ran::FronthaulFormat const& fmt,
                      std::map<UeId, TcontId> const& mapping, SimTime jitter_margin) {
  for (auto const& g : grants) {
    if (g.grant_slot != slot_index) {
      throw std::invalid_argument("grant for slot " + std::to_string(g.grant_slot) +
                                  " passed to report for slot " + std::to_string(slot_index));
    }
  }
  auto bursts = BurstsForGrants(grants, cfg, fmt, mapping);
  return BuildReportFromBursts(bursts, ran::SlotStart(slot_index, cfg), jitter_margin);
}

SimTime EarliestGrantTime(SimTime receipt, CtiTiming const& timing, CtiEntry const& entry) {
  return std::max(receipt + timing.lead_time, entry.arrival_start);
}

std::optional<CtiReport> CtiSender::Emit(CtiReport draft) {
  if (draft.entries.empty() && !heartbeat_) return std::nullopt;
  draft.version = kVersion;
  draft.seq = next_seq_++;
  return draft;
}

std::uint32_t CtiReceiver::Observe(std::uint16_t seq) {
  std::uint32_t skipped = 0;
  if (last_) skipped = static_cast<std::uint16_t>(seq - *last_ - 1);
  last_ = seq;
  ++received_;
  gaps_ += skipped;
  return skipped;
}

}  // namespace ctipon::cti
