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

#include "ctipon/sim/simulator.hpp"

#include <string>

#include "ctipon/util/hash.hpp"

namespace ctipon::sim {

Ticket Simulator::Schedule(SimTime fire_at, ComponentId target, std::function<void()> action) {
  if (fire_at < now_) {
    throw SchedulingError("event scheduled at " + std::to_string(fire_at) +
                          " ns, before now = " + std::to_string(now_) + " ns");
  }
  std::uint64_t seq = next_seq_++;
  queue_.push(Event{fire_at, seq, target, std::move(action)});
  live_.insert(seq);
  return Ticket{seq};
}

bool Simulator::Cancel(Ticket ticket) {
  if (live_.erase(ticket.seq) == 0) return false;
  cancelled_in_queue_.insert(ticket.seq);
  ++cancelled_;
  return true;
}

RunSummary Simulator::RunUntil(SimTime t_end) {
  if (t_end < now_) {
    throw SchedulingError("run_until(" + std::to_string(t_end) + ") is before now = " +
                          std::to_string(now_));
  }
  RunSummary summary;
  while (!queue_.empty() && queue_.top().fire_at <= t_end) {
    // priority_queue::top is const; the event is moved out before pop.
    Event ev = std::move(const_cast<Event&>(queue_.top()));
    queue_.pop();
    if (cancelled_in_queue_.erase(ev.seq) != 0) continue;
    live_.erase(ev.seq);
    now_ = ev.fire_at;

    util::Fnv1a h;
    h.UpdateU64(digest_);
    h.UpdateU64(static_cast<std::uint64_t>(ev.fire_at));
    h.UpdateU64(ev.seq);
    h.UpdateU64(ev.target);
    digest_ = h.digest();
    if (record_trace_) trace_.push_back({ev.fire_at, ev.seq, ev.target});

    ++delivered_;
    ++summary.events_processed;
    if (ev.action) ev.action();
  }
  now_ = t_end;
  summary.final_time = now_;
  return summary;
}

}  // namespace ctipon::sim
