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

#include "ctipon/pon/onu.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ctipon::pon {

std::string_view ToString(TrafficClass c) {
  return c == TrafficClass::kFronthaul ? "fronthaul" : "background";
}

TcontQueue::TcontQueue(TcontInfo info, std::uint64_t limit_bytes)
    : info_(info), limit_(limit_bytes) {}

bool TcontQueue::Enqueue(Packet const& pkt) {
  if (pkt.bytes == 0) throw std::invalid_argument("packet with zero bytes");
  if (occupancy_ + pkt.bytes > limit_) {
    ++dropped_packets_;
    dropped_bytes_ += pkt.bytes;
    enqueued_bytes_ += pkt.bytes;
    return false;
  }
  fifo_.push_back({pkt});
  occupancy_ += pkt.bytes;
  enqueued_bytes_ += pkt.bytes;
  return true;
}

std::uint64_t TcontQueue::StatusReport(SimTime at, std::uint32_t fragment_header_bytes) const {
  std::uint64_t total = 0;
  for (auto const& q : fifo_) {
    if (q.pkt.created_at > at) break;
    total += (q.pkt.bytes - q.sent) + fragment_header_bytes;
  }
  return total;
}

TcontQueue::BurstResult TcontQueue::Transmit(BurstTiming const& when, std::uint32_t grant_bytes,
                                             PonConfig const& cfg, SimTime propagation) {
  BurstResult result;
  SimTime const grant_start = when.frame_start + cfg.OffsetTimeFloor(when.start_offset);
  std::uint32_t const header = cfg.fragment_header_bytes;
  std::uint64_t pos = 0;

  while (!fifo_.empty()) {
    Queued& q = fifo_.front();
    if (q.pkt.created_at > grant_start) break;
    if (grant_bytes - pos <= header) break;
    std::uint64_t room = grant_bytes - pos - header;
    std::uint64_t take = std::min<std::uint64_t>(room, q.pkt.bytes - q.sent);
    if (q.first_grant < 0) q.first_grant = grant_start;
    pos += header + take;
    q.sent += static_cast<std::uint32_t>(take);
    occupancy_ -= take;
    received_bytes_ += take;
    if (q.sent == q.pkt.bytes) {
      SimTime end = when.frame_start + cfg.OffsetTimeCeil(when.start_offset + pos);
      result.samples.push_back({q.pkt.packet_id, info_.id, q.pkt.cls, q.pkt.bytes,
                                q.pkt.created_at, q.first_grant, end + propagation});
      fifo_.pop_front();
    }
  }
  result.used_bytes = pos;
  return result;
}

UpstreamPath::UpstreamPath(PonConfig cfg, std::vector<OnuLink> const& onus,
                           std::vector<TcontInfo> const& tconts)
    : cfg_(cfg) {
  for (auto const& o : onus) propagation_[o.id] = o.propagation;
  for (auto const& t : tconts) {
    if (!propagation_.contains(t.onu)) {
      throw std::invalid_argument("tcont " + std::to_string(t.id) + " on unknown onu " +
                                  std::to_string(t.onu));
    }
    queues_.emplace(t.id, TcontQueue(t, cfg_.queue_limit_bytes));
  }
}

bool UpstreamPath::Enqueue(TcontId tcont, Packet const& pkt) {
  return queue(tcont).Enqueue(pkt);
}

TcontQueue& UpstreamPath::queue(TcontId id) {
  auto it = queues_.find(id);
  if (it == queues_.end()) throw std::out_of_range("unknown tcont " + std::to_string(id));
  return it->second;
}

TcontQueue const& UpstreamPath::queue(TcontId id) const {
  auto it = queues_.find(id);
  if (it == queues_.end()) throw std::out_of_range("unknown tcont " + std::to_string(id));
  return it->second;
}

SimTime UpstreamPath::propagation(OnuId onu) const { return propagation_.at(onu); }

FrameExecution UpstreamPath::ExecuteFrame(BwMap const& map) {
  FrameExecution out;
  SimTime const frame_start = cfg_.FrameStart(map.frame_index);
  for (auto const& a : map.allocations) {
    out.granted_bytes += a.grant_bytes;
    auto it = queues_.find(a.tcont_id);
    if (it == queues_.end()) {
      ++out.unknown_tcont;
      continue;
    }
    TcontQueue& q = it->second;
    SimTime const prop = propagation_.at(q.info().onu);
    BurstTiming when{frame_start, a.start_offset};
    SimTime const grant_start = frame_start + cfg_.OffsetTimeFloor(a.start_offset);
    std::uint64_t report = q.StatusReport(grant_start, cfg_.fragment_header_bytes);

    if (a.kind == GrantKind::kPoll) {
      out.used_bytes += std::min<std::uint32_t>(a.grant_bytes, kGrantGranularity);
    } else {
      auto burst = q.Transmit(when, a.grant_bytes, cfg_, prop);
      out.used_bytes += burst.used_bytes;
      for (auto& s : burst.samples) out.samples.push_back(s);
    }
    SimTime burst_end = frame_start + cfg_.OffsetTimeCeil(a.start_offset + a.grant_bytes);
    out.reports.push_back({a.tcont_id, report, grant_start, burst_end + prop});
  }
  out.wasted_bytes = out.granted_bytes - out.used_bytes;
  return out;
}

}  // namespace ctipon::pon
