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

#ifndef CTIPON_PON_ONU_HPP_
#define CTIPON_PON_ONU_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "ctipon/pon/bwmap.hpp"
#include "ctipon/pon/config.hpp"

namespace ctipon::pon {

enum class TrafficClass : std::uint8_t { kFronthaul, kBackground };

std::string_view ToString(TrafficClass c);

struct Packet {
  std::uint64_t packet_id = 0;
  std::uint32_t bytes = 0;
  SimTime created_at = 0;  // arrival at the ONU ingress
  TrafficClass cls = TrafficClass::kFronthaul;
};

struct LatencySample {
  std::uint64_t packet_id = 0;
  TcontId tcont_id = 0;
  TrafficClass cls = TrafficClass::kFronthaul;
  std::uint32_t bytes = 0;
  SimTime enqueue_time = 0;
  SimTime grant_start_time = 0;  // start of the first grant carrying the packet
  SimTime olt_rx_time = 0;       // last byte at the OLT

  SimTime queue_delay() const { return grant_start_time - enqueue_time; }
  SimTime total_delay() const { return olt_rx_time - enqueue_time; }
};

struct TcontInfo {
  TcontId id = 0;
  OnuId onu = 0;
  TrafficClass cls = TrafficClass::kFronthaul;
};

// Absolute placement of one allocation.
struct BurstTiming {
  SimTime frame_start = 0;
  std::uint32_t start_offset = 0;
};

/// FIFO of packets at one ONU awaiting upstream grants.
///
/// Packets are fragmented byte-granularly across grants; each fragment costs
/// fragment_header_bytes of the grant. A packet is eligible for a grant only
/// once its created_at is at or before the grant start.
class TcontQueue {
 public:
  TcontQueue(TcontInfo info, std::uint64_t limit_bytes);

  TcontInfo const& info() const { return info_; }

  /// False (and counted as a drop) if the packet would exceed the limit.
  bool Enqueue(Packet const& pkt);

  std::uint64_t occupancy_bytes() const { return occupancy_; }
  std::size_t packet_count() const { return fifo_.size(); }

  /// Grant bytes needed to drain every packet present at `at`, i.e. unsent
  /// bytes plus one fragment header per packet.
  std::uint64_t StatusReport(SimTime at, std::uint32_t fragment_header_bytes) const;

  struct BurstResult {
    std::uint64_t used_bytes = 0;
    std::vector<LatencySample> samples;
  };
  /// Sends as much eligible data as the grant allows, oldest first.
  BurstResult Transmit(BurstTiming const& when, std::uint32_t grant_bytes, PonConfig const& cfg,
                       SimTime propagation);

  std::uint64_t enqueued_bytes() const { return enqueued_bytes_; }
  std::uint64_t received_bytes() const { return received_bytes_; }
  std::uint64_t dropped_bytes() const { return dropped_bytes_; }
  std::uint64_t dropped_packets() const { return dropped_packets_; }

 private:
  struct Queued {
    Packet pkt;
    std::uint32_t sent = 0;
    SimTime first_grant = -1;
  };

  TcontInfo info_;
  std::uint64_t limit_;
  std::deque<Queued> fifo_;
  std::uint64_t occupancy_ = 0;
  std::uint64_t enqueued_bytes_ = 0;
  std::uint64_t received_bytes_ = 0;
  std::uint64_t dropped_bytes_ = 0;
  std::uint64_t dropped_packets_ = 0;
};

struct StatusReportMsg {
  TcontId tcont_id = 0;
  std::uint64_t value = 0;
  SimTime generated_at = 0;  // grant start of the carrying allocation
  SimTime available_at = 0;  // reaches the OLT
};

struct FrameExecution {
  std::vector<LatencySample> samples;
  std::vector<StatusReportMsg> reports;
  std::uint64_t granted_bytes = 0;
  std::uint64_t used_bytes = 0;
  std::uint64_t wasted_bytes = 0;
  std::uint64_t unknown_tcont = 0;
};

struct OnuLink {
  OnuId id = 0;
  SimTime propagation = 0;
};

/// All ONU-side upstream state: TCONT queues and per-ONU fiber delay.
class UpstreamPath {
 public:
  UpstreamPath(PonConfig cfg, std::vector<OnuLink> const& onus,
               std::vector<TcontInfo> const& tconts);

  bool Enqueue(TcontId tcont, Packet const& pkt);

  /// Runs every allocation of a validated map at its absolute start time.
  /// Polls carry a 4-byte status report and no data; every other allocation
  /// carries its report for free in the burst header.
  FrameExecution ExecuteFrame(BwMap const& map);

  TcontQueue& queue(TcontId id);
  TcontQueue const& queue(TcontId id) const;
  std::map<TcontId, TcontQueue> const& queues() const { return queues_; }
  SimTime propagation(OnuId onu) const;

 private:
  PonConfig cfg_;
  std::map<OnuId, SimTime> propagation_;
  std::map<TcontId, TcontQueue> queues_;
};

}  // namespace ctipon::pon

#endif  // CTIPON_PON_ONU_HPP_
