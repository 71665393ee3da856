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

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "ctipon/telemetry/metrics.hpp"

namespace ctipon::telemetry {
namespace {

std::int64_t FloorDiv(SimTime a, SimTime b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void Extend(std::optional<SimTime>& lo, std::optional<SimTime>& hi, SimTime v) {
  if (!lo || v < *lo) lo = v;
  if (!hi || v > *hi) hi = v;
}

LatencyStats MakeStats(Reservoir const& r, double sum, std::optional<SimTime> lo,
                       std::optional<SimTime> hi) {
  LatencyStats s;
  s.count = r.seen();
  if (s.count == 0) return s;
  s.mean = sum / static_cast<double>(s.count);
  s.min = lo;
  s.max = hi;
  auto sorted = r.Sorted();
  s.p50 = NearestRank(sorted, 50);
  s.p95 = NearestRank(sorted, 95);
  s.p99 = NearestRank(sorted, 99);
  return s;
}

std::string WindowStream(std::int64_t index, char const* kind) {
  return "window/" + std::to_string(index) + "/" + kind;
}

}  // namespace

Collector::Accumulator::Accumulator(CollectorConfig const& cfg, std::int64_t index)
    : q(cfg.window_reservoir, cfg.seed, WindowStream(index, "q")),
      t(cfg.window_reservoir, cfg.seed, WindowStream(index, "t")) {}

Collector::Collector(CollectorConfig cfg, std::string mode_label)
    : cfg_(cfg),
      run_q_(cfg.run_reservoir, cfg.seed, "run/q"),
      run_t_(cfg.run_reservoir, cfg.seed, "run/t"),
      run_bg_(cfg.run_reservoir, cfg.seed, "run/bg") {
  if (cfg_.window <= 0 || cfg_.frame_duration <= 0) {
    throw std::invalid_argument("telemetry window and frame duration must be positive");
  }
  labels_.emplace_back(0, std::move(mode_label));
}

void Collector::SetModeLabel(SimTime at, std::string label) {
  if (labels_.back().second == label) return;
  if (labels_.back().first == at) {
    labels_.back().second = std::move(label);
    return;
  }
  labels_.emplace_back(at, std::move(label));
}

std::int64_t Collector::IndexOf(SimTime t) const {
  std::int64_t idx = FloorDiv(t, cfg_.window);
  if (cfg_.horizon > 0) {
    idx = std::min(idx, FloorDiv(cfg_.horizon - 1, cfg_.window));
  }
  return idx;
}

Collector::Accumulator& Collector::At(SimTime t) {
  std::int64_t idx = IndexOf(t);
  auto it = open_.find(idx);
  if (it == open_.end()) it = open_.emplace(idx, Accumulator(cfg_, idx)).first;
  return it->second;
}

void Collector::Record(pon::LatencySample const& s) {
  SimTime q = s.queue_delay();
  SimTime t = s.total_delay();
  if (s.cls == pon::TrafficClass::kBackground) {
    run_bg_.Add(q);
    run_bg_sum_ += static_cast<double>(q);
    Extend(run_bg_min_, run_bg_max_, q);
    return;
  }
  ++total_samples_;
  run_q_.Add(q);
  run_t_.Add(t);
  run_q_sum_ += static_cast<double>(q);
  run_t_sum_ += static_cast<double>(t);
  Extend(run_q_min_, run_q_max_, q);
  Extend(run_t_min_, run_t_max_, t);
  histogram_.Add(q);

  if (IndexOf(s.olt_rx_time) < next_to_close_) {
    ++late_samples_;
    return;
  }
  Accumulator& acc = At(s.olt_rx_time);
  acc.q.Add(q);
  acc.t.Add(t);
  acc.q_sum += static_cast<double>(q);
  acc.t_sum += static_cast<double>(t);
  Extend(acc.q_min, acc.q_max, q);
  Extend(acc.t_min, acc.t_max, t);
}

void Collector::RecordFrame(SimTime frame_start, std::uint64_t granted, std::uint64_t used,
                            std::uint64_t wasted) {
  run_granted_ += granted;
  run_used_ += used;
  run_wasted_ += wasted;
  if (IndexOf(frame_start) < next_to_close_) return;
  Accumulator& acc = At(frame_start);
  acc.granted += granted;
  acc.used += used;
  acc.wasted += wasted;
}

void Collector::RecordCti(SimTime at) {
  ++run_cti_;
  if (IndexOf(at) < next_to_close_) return;
  ++At(at).cti;
}

void Collector::RecordDrop(SimTime at) {
  ++run_drops_;
  if (IndexOf(at) < next_to_close_) return;
  ++At(at).drops;
}

std::string Collector::LabelFor(SimTime begin, SimTime end) const {
  std::string const* current = &labels_.front().second;
  for (auto const& [at, label] : labels_) {
    if (at <= begin) current = &label;
  }
  for (auto const& [at, label] : labels_) {
    if (at > begin && at < end && label != *current) return "mixed";
  }
  return *current;
}

MetricWindow Collector::Build(std::int64_t index, Accumulator const& acc, SimTime end) const {
  MetricWindow w;
  w.window_start = index * cfg_.window;
  w.window_duration = std::min(cfg_.window, std::max<SimTime>(end - w.window_start, 0));
  w.mode = LabelFor(w.window_start, w.window_start + w.window_duration);
  w.queue_delay = MakeStats(acc.q, acc.q_sum, acc.q_min, acc.q_max);
  w.total_delay = MakeStats(acc.t, acc.t_sum, acc.t_min, acc.t_max);
  w.granted_bytes = acc.granted;
  w.used_bytes = acc.used;
  w.wasted_bytes = acc.wasted;
  w.frames = static_cast<std::uint64_t>(sim::CeilDiv(w.window_duration, cfg_.frame_duration));
  w.utilization = w.frames == 0 ? 0.0
                                : static_cast<double>(w.used_bytes) /
                                      (static_cast<double>(w.frames) *
                                       static_cast<double>(cfg_.frame_capacity_bytes));
  w.cti_msgs = acc.cti;
  w.drops = acc.drops;
  return w;
}

std::vector<MetricWindow> Collector::AdvanceTo(SimTime now) {
  cursor_ = std::max(cursor_, now);
  std::vector<MetricWindow> out;
  std::int64_t const final_window =
      cfg_.horizon > 0 ? FloorDiv(cfg_.horizon - 1, cfg_.window) : -1;
  while ((next_to_close_ + 1) * cfg_.window + cfg_.close_grace <= now) {
    // The final window stays open until Finish().
    if (next_to_close_ == final_window) break;
    auto it = open_.find(next_to_close_);
    Accumulator empty(cfg_, next_to_close_);
    Accumulator const& acc = it == open_.end() ? empty : it->second;
    out.push_back(Build(next_to_close_, acc, (next_to_close_ + 1) * cfg_.window));
    closed_.push_back(out.back());
    if (it != open_.end()) open_.erase(it);
    ++next_to_close_;
  }
  return out;
}

MetricWindow Collector::Snapshot() const {
  std::int64_t idx = IndexOf(cursor_);
  auto it = open_.find(idx);
  SimTime end = (idx + 1) * cfg_.window;
  if (it != open_.end()) return Build(idx, it->second, end);
  if (idx < next_to_close_ && !closed_.empty()) {
    for (auto const& w : closed_) {
      if (w.window_start == idx * cfg_.window) return w;
    }
  }
  Accumulator empty(cfg_, idx);
  return Build(idx, empty, end);
}

RunReport Collector::Finish(SimTime end) {
  // Close every full window, then the trailing partial one if the run does
  // not end on a window boundary.
  AdvanceTo(std::max(cursor_, end) + cfg_.close_grace);
  std::int64_t last = static_cast<std::int64_t>(sim::CeilDiv(end, cfg_.window));
  // Without a horizon, data past `end` gets zero-length windows of its own.
  if (!open_.empty()) last = std::max(last, open_.rbegin()->first + 1);
  while (next_to_close_ < last) {
    auto it = open_.find(next_to_close_);
    Accumulator empty(cfg_, next_to_close_);
    closed_.push_back(Build(next_to_close_, it == open_.end() ? empty : it->second, end));
    if (it != open_.end()) open_.erase(it);
    ++next_to_close_;
  }

  RunReport r;
  r.mode = LabelFor(0, end);
  r.duration = end;
  MetricWindow& a = r.aggregate;
  a.window_start = 0;
  a.window_duration = end;
  a.mode = r.mode;
  a.queue_delay = MakeStats(run_q_, run_q_sum_, run_q_min_, run_q_max_);
  a.total_delay = MakeStats(run_t_, run_t_sum_, run_t_min_, run_t_max_);
  a.granted_bytes = run_granted_;
  a.used_bytes = run_used_;
  a.wasted_bytes = run_wasted_;
  a.frames = static_cast<std::uint64_t>(sim::CeilDiv(end, cfg_.frame_duration));
  a.utilization = a.frames == 0 ? 0.0
                                : static_cast<double>(a.used_bytes) /
                                      (static_cast<double>(a.frames) *
                                       static_cast<double>(cfg_.frame_capacity_bytes));
  a.cti_msgs = run_cti_;
  a.drops = run_drops_;
  r.background_queue_delay = MakeStats(run_bg_, run_bg_sum_, run_bg_min_, run_bg_max_);
  r.late_samples = late_samples_;
  r.windows = closed_;
  r.histogram = histogram_;
  return r;
}

}  // namespace ctipon::telemetry
