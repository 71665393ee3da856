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

#ifndef CTIPON_CTI_REPORT_HPP_
#define CTIPON_CTI_REPORT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ctipon/ran/types.hpp"

namespace ctipon::cti {

using sim::SimTime;

inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::uint8_t kMsgTypeGrantReport = 1;

struct CtiEntry {
  TcontId tcont_id = 0;
  std::uint32_t expected_bytes = 0;
  SimTime arrival_start = 0;
  SimTime arrival_end = 0;

  friend bool operator==(CtiEntry const&, CtiEntry const&) = default;
};

struct CtiReport {
  std::uint8_t version = kVersion;
  std::uint16_t seq = 0;
  SimTime report_time = 0;
  std::vector<CtiEntry> entries;

  friend bool operator==(CtiReport const&, CtiReport const&) = default;
};

struct CtiTiming {
  // Minimum interval between report receipt at the OLT and the earliest
  // grant it may place for that report.
  SimTime lead_time = 250 * sim::kMicrosecond;
  SimTime transport_delay = 20 * sim::kMicrosecond;
  // Each reported arrival window is widened by this much on both sides.
  SimTime jitter_margin = 10 * sim::kMicrosecond;

  void Validate() const;
};

// One fronthaul burst the DU expects at a TCONT's ONU ingress.
struct FronthaulBurst {
  TcontId tcont_id = 0;
  std::uint64_t bytes = 0;
  SimTime arrival = 0;
};

class UnmappedUeError : public std::runtime_error {
 public:
  explicit UnmappedUeError(UeId ue);
  UeId ue() const { return ue_; }

 private:
  UeId ue_;
};

/// Converts one slot's grants into per-TCONT fronthaul bursts (bytes summed,
/// arrivals kept per grant). Throws UnmappedUeError for a ue_id with no TCONT.
std::vector<FronthaulBurst> BurstsForGrants(std::span<ran::UplinkGrant const> grants,
                                            ran::SlotConfig const& cfg,
                                            ran::FronthaulFormat const& fmt,
                                            std::map<UeId, TcontId> const& mapping);

/// Aggregates bursts into one entry per TCONT (ascending tcont_id). The
/// window spans the contributing arrivals widened by +/- jitter_margin.
CtiReport BuildReportFromBursts(std::span<FronthaulBurst const> bursts, SimTime report_time,
                                SimTime jitter_margin);

/// Builds the grant report for one slot; report_time is the slot boundary.
/// All grants must belong to slot_index.
CtiReport BuildReport(std::span<ran::UplinkGrant const> grants, std::int64_t slot_index,
                      ran::SlotConfig const& cfg, ran::FronthaulFormat const& fmt,
                      std::map<UeId, TcontId> const& mapping, SimTime jitter_margin);

/// max(receipt + lead_time, arrival_start)
SimTime EarliestGrantTime(SimTime receipt, CtiTiming const& timing, CtiEntry const& entry);

/// Per-DU sender: stamps a wrapping 16-bit sequence number and suppresses
/// empty reports unless heartbeat mode is on.
class CtiSender {
 public:
  explicit CtiSender(bool heartbeat = false) : heartbeat_(heartbeat) {}

  std::optional<CtiReport> Emit(CtiReport draft);
  std::uint16_t next_seq() const { return next_seq_; }
  bool heartbeat() const { return heartbeat_; }

 private:
  bool heartbeat_;
  std::uint16_t next_seq_ = 0;
};

/// Tracks the sequence stream at the OLT. Gaps count missing reports.
class CtiReceiver {
 public:
  /// Returns the number of reports skipped before this one.
  std::uint32_t Observe(std::uint16_t seq);
  std::uint64_t received() const { return received_; }
  std::uint64_t gaps() const { return gaps_; }

 private:
  std::optional<std::uint16_t> last_;
  std::uint64_t received_ = 0;
  std::uint64_t gaps_ = 0;
};

}  // namespace ctipon::cti

#endif  // CTIPON_CTI_REPORT_HPP_
