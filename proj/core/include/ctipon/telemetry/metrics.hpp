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

#ifndef CTIPON_TELEMETRY_METRICS_HPP_
#define CTIPON_TELEMETRY_METRICS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctipon/pon/onu.hpp"
#include "ctipon/telemetry/histogram.hpp"

namespace ctipon::telemetry {

struct LatencyStats {
  std::uint64_t count = 0;
  std::optional<double> mean;  // ns
  std::optional<SimTime> min;
  std::optional<SimTime> max;
  std::optional<SimTime> p50;
  std::optional<SimTime> p95;
  std::optional<SimTime> p99;

  friend bool operator==(LatencyStats const&, LatencyStats const&) = default;
};

struct MetricWindow {
  SimTime window_start = 0;
  SimTime window_duration = 0;
  std::string mode;
  LatencyStats queue_delay;
  LatencyStats total_delay;
  std::uint64_t granted_bytes = 0;
  std::uint64_t used_bytes = 0;
  std::uint64_t wasted_bytes = 0;
  std::uint64_t frames = 0;  // utilization denominator, in frames
  double utilization = 0.0;  // used / (frames * raw frame capacity)
  std::uint64_t cti_msgs = 0;
  std::uint64_t drops = 0;

  std::uint64_t samples() const { return queue_delay.count; }

  friend bool operator==(MetricWindow const&, MetricWindow const&) = default;
};

struct TcontCounters {
  TcontId tcont_id = 0;
  std::string cls;
  std::uint64_t enqueued_bytes = 0;
  std::uint64_t received_bytes = 0;
  std::uint64_t queued_bytes = 0;
  std::uint64_t dropped_bytes = 0;

  friend bool operator==(TcontCounters const&, TcontCounters const&) = default;
};

struct RunReport {
  std::string scenario;
  std::string scenario_hash;
  std::string mode;
  std::uint64_t seed = 0;
  SimTime duration = 0;

  MetricWindow aggregate;        // whole run as a single window
  LatencyStats background_queue_delay;
  std::uint64_t cti_dropped = 0;
  std::uint64_t bwmap_violations = 0;
  std::uint64_t late_samples = 0;
  std::vector<TcontCounters> tconts;
  std::vector<MetricWindow> windows;
  LatencyHistogram histogram;    // fronthaul queue_delay

  friend bool operator==(RunReport const&, RunReport const&) = default;
};

struct CollectorConfig {
  SimTime window = 100 * sim::kMillisecond;
  SimTime frame_duration = 125 * sim::kMicrosecond;
  std::uint64_t frame_capacity_bytes = 155'520;
  std::size_t window_reservoir = 65'536;
  std::size_t run_reservoir = 1u << 20;
  // A window closes once time has passed its end by this much; no sample
  // can land in it afterwards.
  SimTime close_grace = sim::kMillisecond;
  std::uint64_t seed = 0;
  // Run end. Events past it (bursts still in flight at the horizon) count
  // towards the final window. Zero means open-ended.
  SimTime horizon = 0;
};

/// Routes latency samples and per-frame grant statistics into fixed windows
/// and whole-run aggregates. Fronthaul samples feed the latency metrics;
/// background samples are summarised separately.
class Collector {
 public:
  Collector(CollectorConfig cfg, std::string mode_label);

  void SetModeLabel(SimTime at, std::string label);

  void Record(pon::LatencySample const& sample);
  void RecordFrame(SimTime frame_start, std::uint64_t granted, std::uint64_t used,
                   std::uint64_t wasted);
  void RecordCti(SimTime at);
  void RecordDrop(SimTime at);

  /// Closes and returns every window that ended at least close_grace before
  /// `now`. Also moves the snapshot cursor to `now`.
  std::vector<MetricWindow> AdvanceTo(SimTime now);
  /// Copy of the window containing the latest AdvanceTo() time.
  MetricWindow Snapshot() const;

  /// Closes all windows up to `end` and returns the aggregated report.
  /// Identity fields (scenario, hash, seed, tconts) are left to the caller.
  RunReport Finish(SimTime end);

  std::uint64_t total_samples() const { return total_samples_; }
  std::vector<MetricWindow> const& closed() const { return closed_; }

 private:
  struct Accumulator {
    Accumulator(CollectorConfig const& cfg, std::int64_t index);
    Reservoir q;
    Reservoir t;
    double q_sum = 0;
    double t_sum = 0;
    std::optional<SimTime> q_min, q_max, t_min, t_max;
    std::uint64_t granted = 0;
    std::uint64_t used = 0;
    std::uint64_t wasted = 0;
    std::uint64_t cti = 0;
    std::uint64_t drops = 0;
  };

  std::int64_t IndexOf(SimTime t) const;
  Accumulator& At(SimTime t);
  MetricWindow Build(std::int64_t index, Accumulator const& acc, SimTime end) const;
  std::string LabelFor(SimTime begin, SimTime end) const;

  CollectorConfig cfg_;
  std::vector<std::pair<SimTime, std::string>> labels_;
  std::map<std::int64_t, Accumulator> open_;
  std::int64_t next_to_close_ = 0;
  std::vector<MetricWindow> closed_;
  SimTime cursor_ = 0;

  std::uint64_t total_samples_ = 0;
  std::uint64_t late_samples_ = 0;
  Reservoir run_q_;
  Reservoir run_t_;
  Reservoir run_bg_;
  double run_q_sum_ = 0;
  double run_t_sum_ = 0;
  double run_bg_sum_ = 0;
  std::optional<SimTime> run_q_min_, run_q_max_, run_t_min_, run_t_max_, run_bg_min_, run_bg_max_;
  std::uint64_t run_granted_ = 0;
  std::uint64_t run_used_ = 0;
  std::uint64_t run_wasted_ = 0;
  std::uint64_t run_cti_ = 0;
  std::uint64_t run_drops_ = 0;
  LatencyHistogram histogram_;
};

enum class ExportFormat { kCsv, kJsonLines };

inline constexpr std::string_view kCsvHeader =
    "window_start_ns,mode,samples,mean_q_us,p50_q_us,p95_q_us,p99_q_us,mean_t_us,util,"
    "granted_B,used_B,wasted_B,cti_msgs,drops";

/// Per-window series in a fixed field order. Absent values are empty CSV
/// fields or JSON nulls.
std::string Export(RunReport const& report, ExportFormat format);
/// One window as a JSON object with the export keys (no trailing newline).
std::string WindowJson(MetricWindow const& w);
/// Full report document (aggregates, per-TCONT counters, windows, histogram).
std::string ToJson(RunReport const& report);

}  // namespace ctipon::telemetry

#endif  // CTIPON_TELEMETRY_METRICS_HPP_
