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

#ifndef CTIPON_SIM_SIMULATOR_HPP_
#define CTIPON_SIM_SIMULATOR_HPP_

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ctipon/sim/time.hpp"

namespace ctipon::sim {

using ComponentId = std::uint32_t;

struct Event {
  SimTime fire_at = 0;
  std::uint64_t seq = 0;
  ComponentId target = 0;
  std::function<void()> action;
};

struct Ticket {
  std::uint64_t seq = 0;
};

struct RunSummary {
  std::uint64_t events_processed = 0;
  SimTime final_time = 0;
};

struct TraceRecord {
  SimTime fire_at;
  std::uint64_t seq;
  ComponentId target;

  friend bool operator==(TraceRecord const&, TraceRecord const&) = default;
};

// Raised when a caller schedules into the past or runs time backwards. Always
// a bug in the caller's timing chain, never a runtime condition.
class SchedulingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Single-threaded discrete-event loop.
///
/// Events are delivered in (fire_at, seq) order where seq is assigned at
/// schedule time, so ties fire FIFO. Every delivered event is folded into a
/// running FNV-1a digest of (fire_at, seq, target); two runs of the same
/// scenario with the same seed produce the same digest.
class Simulator {
 public:
  SimTime now() const { return now_; }

  Ticket Schedule(SimTime fire_at, ComponentId target, std::function<void()> action);
  Ticket ScheduleIn(SimTime delay, ComponentId target, std::function<void()> action) {
    return Schedule(now_ + delay, target, std::move(action));
  }
  /// Returns false if the event already fired, was cancelled, or is unknown.
  bool Cancel(Ticket ticket);

  /// Processes every event with fire_at <= t_end, then sets now() = t_end.
  RunSummary RunUntil(SimTime t_end);

  std::uint64_t scheduled_count() const { return next_seq_; }
  std::uint64_t delivered_count() const { return delivered_; }
  std::uint64_t cancelled_count() const { return cancelled_; }
  std::uint64_t pending_count() const { return queue_.size() - cancelled_in_queue_.size(); }

  std::uint64_t trace_digest() const { return digest_; }
  void set_record_trace(bool on) { record_trace_ = on; }
  std::vector<TraceRecord> const& trace() const { return trace_; }

 private:
  struct Later {
    bool operator()(Event const& a, Event const& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t delivered_ = 0;
  std::uint64_t cancelled_ = 0;
  std::uint64_t digest_ = 0xcbf29ce484222325ULL;
  bool record_trace_ = false;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::unordered_set<std::uint64_t> cancelled_in_queue_;
  std::unordered_set<std::uint64_t> live_;
  std::vector<TraceRecord> trace_;
};

}  // namespace ctipon::sim

#endif  // CTIPON_SIM_SIMULATOR_HPP_
