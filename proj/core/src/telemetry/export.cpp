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

#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "ctipon/telemetry/metrics.hpp"

namespace ctipon::telemetry {
namespace {

using Json = nlohmann::ordered_json;

std::string Micros(std::optional<double> ns) {
  if (!ns) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", *ns / 1000.0);
  return buf;
}

std::string Micros(std::optional<SimTime> ns) {
  if (!ns) return {};
  return Micros(std::optional<double>(static_cast<double>(*ns)));
}

std::string Util(double u) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", u);
  return buf;
}

Json MicrosJson(std::optional<double> ns) {
  if (!ns) return nullptr;
  return *ns / 1000.0;
}

Json MicrosJson(std::optional<SimTime> ns) {
  if (!ns) return nullptr;
  return static_cast<double>(*ns) / 1000.0;
}

template <typename T>
Json Opt(std::optional<T> const& v) {
  if (!v) return nullptr;
  return *v;
}

Json ExportObject(MetricWindow const& w) {
  Json j;
  j["window_start_ns"] = w.window_start;
  j["mode"] = w.mode;
  j["samples"] = w.samples();
  j["mean_q_us"] = MicrosJson(w.queue_delay.mean);
  j["p50_q_us"] = MicrosJson(w.queue_delay.p50);
  j["p95_q_us"] = MicrosJson(w.queue_delay.p95);
  j["p99_q_us"] = MicrosJson(w.queue_delay.p99);
  j["mean_t_us"] = MicrosJson(w.total_delay.mean);
  j["util"] = w.utilization;
  j["granted_B"] = w.granted_bytes;
  j["used_B"] = w.used_bytes;
  j["wasted_B"] = w.wasted_bytes;
  j["cti_msgs"] = w.cti_msgs;
  j["drops"] = w.drops;
  return j;
}

Json StatsJson(LatencyStats const& s) {
  Json j;
  j["count"] = s.count;
  j["mean_ns"] = Opt(s.mean);
  j["min_ns"] = Opt(s.min);
  j["max_ns"] = Opt(s.max);
  j["p50_ns"] = Opt(s.p50);
  j["p95_ns"] = Opt(s.p95);
  j["p99_ns"] = Opt(s.p99);
  return j;
}

Json FullWindow(MetricWindow const& w) {
  Json j;
  j["window_start_ns"] = w.window_start;
  j["window_duration_ns"] = w.window_duration;
  j["mode"] = w.mode;
  j["queue_delay"] = StatsJson(w.queue_delay);
  j["total_delay"] = StatsJson(w.total_delay);
  j["granted_bytes"] = w.granted_bytes;
  j["used_bytes"] = w.used_bytes;
  j["wasted_bytes"] = w.wasted_bytes;
  j["frames"] = w.frames;
  j["utilization"] = w.utilization;
  j["cti_msgs"] = w.cti_msgs;
  j["drops"] = w.drops;
  return j;
}

}  // namespace

std::string Export(RunReport const& report, ExportFormat format) {
  std::string out;
  if (format == ExportFormat::kCsv) {
    out.append(kCsvHeader).push_back('\n');
    for (auto const& w : report.windows) {
      out += std::to_string(w.window_start);
      out += ',' + w.mode;
      out += ',' + std::to_string(w.samples());
      out += ',' + Micros(w.queue_delay.mean);
      out += ',' + Micros(w.queue_delay.p50);
      out += ',' + Micros(w.queue_delay.p95);
      out += ',' + Micros(w.queue_delay.p99);
      out += ',' + Micros(w.total_delay.mean);
      out += ',' + Util(w.utilization);
      out += ',' + std::to_string(w.granted_bytes);
      out += ',' + std::to_string(w.used_bytes);
      out += ',' + std::to_string(w.wasted_bytes);
      out += ',' + std::to_string(w.cti_msgs);
      out += ',' + std::to_string(w.drops);
      out.push_back('\n');
    }
    return out;
  }
  for (auto const& w : report.windows) {
    out += ExportObject(w).dump();
    out.push_back('\n');
  }
  return out;
}

std::string WindowJson(MetricWindow const& w) {
  Json j = ExportObject(w);
  j["window_duration_ns"] = w.window_duration;
  j["min_q_us"] = MicrosJson(w.queue_delay.min);
  j["max_q_us"] = MicrosJson(w.queue_delay.max);
  j["p99_t_us"] = MicrosJson(w.total_delay.p99);
  return j.dump();
}

std::string ToJson(RunReport const& r) {
  Json j;
  j["scenario"] = r.scenario;
  j["scenario_hash"] = r.scenario_hash;
  j["mode"] = r.mode;
  j["seed"] = r.seed;
  j["duration_ns"] = r.duration;
  j["aggregate"] = FullWindow(r.aggregate);
  j["background_queue_delay"] = StatsJson(r.background_queue_delay);
  j["cti_dropped"] = r.cti_dropped;
  j["bwmap_violations"] = r.bwmap_violations;
  j["late_samples"] = r.late_samples;
  Json tconts = Json::array();
  for (auto const& t : r.tconts) {
    Json tj;
    tj["tcont_id"] = t.tcont_id;
    tj["class"] = t.cls;
    tj["enqueued_bytes"] = t.enqueued_bytes;
    tj["received_bytes"] = t.received_bytes;
    tj["queued_bytes"] = t.queued_bytes;
    tj["dropped_bytes"] = t.dropped_bytes;
    tconts.push_back(std::move(tj));
  }
  j["tconts"] = std::move(tconts);
  Json hist;
  hist["edges_ns"] = r.histogram.edges();
  hist["counts"] = r.histogram.counts();
  hist["total"] = r.histogram.total();
  j["queue_delay_histogram"] = std::move(hist);
  Json windows = Json::array();
  for (auto const& w : r.windows) windows.push_back(FullWindow(w));
  j["windows"] = std::move(windows);
  return j.dump(2) + "\n";
}

}  // namespace ctipon::telemetry
