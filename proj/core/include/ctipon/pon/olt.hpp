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

#ifndef CTIPON_PON_OLT_HPP_
#define CTIPON_PON_OLT_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "ctipon/cti/report.hpp"
#include "ctipon/pon/dba.hpp"
#include "ctipon/pon/onu.hpp"

namespace ctipon::pon {

/// OLT-side DBA state machine.
///
/// Holds the latest status report per TCONT, the grants issued since, and the
/// queue of pending CTI entries, and turns them into one BwMap per frame.
/// A status report generated at time r already counts bytes that later
/// grants will carry; those grants (status-report grants starting at or after
/// r, and cooperative grants or pending entries for bursts that had arrived
/// by r) are subtracted before the report is used as demand.
class Olt {
 public:
  Olt(PonConfig cfg, cti::CtiTiming timing, std::vector<TcontInfo> const& tconts,
      DbaMode mode = DbaMode::kCooperative);

  DbaMode mode() const { return mode_; }
  /// Takes effect for the next ComputeMap call. Leaving cooperative mode
  /// discards pending entries.
  void set_mode(DbaMode mode);

  /// Accepts a decoded CTI report received at `receipt`. Entries are ignored
  /// outside cooperative mode or for TCONTs the OLT does not know.
  void ReceiveCti(cti::CtiReport const& report, SimTime receipt);
  void ReceiveStatus(StatusReportMsg const& msg);

  /// Computes the map for `frame_index` using information available at `now`.
  BwMap ComputeMap(std::uint64_t frame_index, SimTime now);

  std::size_t pending_entries() const { return pending_.size(); }
  cti::CtiReceiver const& receiver() const { return receiver_; }
  std::uint64_t cooperative_bytes_granted() const { return cooperative_granted_; }

 private:
  struct Issued {
    SimTime burst_start;
    std::uint32_t bytes;
    GrantKind kind;
    SimTime arrival_start;  // cooperative grants only
  };
  struct TcontState {
    TcontInfo info;
    std::deque<StatusReportMsg> inbound;  // not yet available at the OLT
    std::optional<StatusReportMsg> latest;
    std::deque<Issued> issued;
    std::optional<std::uint64_t> last_alloc_frame;
  };

  std::uint64_t DemandFor(TcontState& st) const;

  PonConfig cfg_;
  cti::CtiTiming timing_;
  DbaMode mode_;
  std::map<TcontId, TcontState> tconts_;
  std::deque<PendingEntry> pending_;
  std::uint64_t next_order_ = 0;
  cti::CtiReceiver receiver_;
  std::uint64_t cooperative_granted_ = 0;
};

}  // namespace ctipon::pon

#endif  // CTIPON_PON_OLT_HPP_
