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

#include "ctipon/harness/compare.hpp"

#include <nlohmann/json.hpp>
#include "ctipon/harness/simulation.hpp"

namespace ctipon::harness {
namespace {

using Json = nlohmann::ordered_json;

template <typename T>
std::optional<double> AsDouble(std::optional<T> v) {
  if (!v) return std::nullopt;
  return static_cast<double>(*v);
}

MetricDelta Row(std::string name, std::optional<double> cti, std::optional<double> sr) {
  MetricDelta d{std::move(name), cti, sr, std::nullopt, std::nullopt};
  if (cti && sr) {
    d.delta = *sr - *cti;
    if (*cti != 0.0) d.ratio = *sr / *cti;
  }
  return d;
}

Json OptJson(std::optional<double> v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

MetricDelta const* ComparisonReport::Find(std::string const& metric) const {
  for (auto const& m : metrics) {
    if (m.metric == metric) return &m;
  }
  return nullptr;
}

std::vector<MetricDelta> Diff(telemetry::RunReport const& c, telemetry::RunReport const& s) {
  auto const& a = c.aggregate;
  auto const& b = s.aggregate;
  std::vector<MetricDelta> out;
  out.push_back(Row("samples", static_cast<double>(a.samples()), static_cast<double>(b.samples())));
  out.push_back(Row("mean_queue_delay_ns", a.queue_delay.mean, b.queue_delay.mean));
  out.push_back(Row("p50_queue_delay_ns", AsDouble(a.queue_delay.p50), AsDouble(b.queue_delay.p50)));
  out.push_back(Row("p95_queue_delay_ns", AsDouble(a.queue_delay.p95), AsDouble(b.queue_delay.p95)));
  out.push_back(Row("p99_queue_delay_ns", AsDouble(a.queue_delay.p99), AsDouble(b.queue_delay.p99)));
  out.push_back(Row("max_queue_delay_ns", AsDouble(a.queue_delay.max), AsDouble(b.queue_delay.max)));
  out.push_back(Row("mean_total_delay_ns", a.total_delay.mean, b.total_delay.mean));
  out.push_back(Row("p99_total_delay_ns", AsDouble(a.total_delay.p99), AsDouble(b.total_delay.p99)));
  out.push_back(Row("background_mean_queue_delay_ns", c.background_queue_delay.mean,
                    s.background_queue_delay.mean));
  out.push_back(Row("utilization", a.utilization, b.utilization));
  out.push_back(Row("granted_bytes", static_cast<double>(a.granted_bytes),
                    static_cast<double>(b.granted_bytes)));
  out.push_back(
      Row("used_bytes", static_cast<double>(a.used_bytes), static_cast<double>(b.used_bytes)));
  out.push_back(Row("wasted_bytes", static_cast<double>(a.wasted_bytes),
                    static_cast<double>(b.wasted_bytes)));
  return out;
}

ComparisonReport Compare(ScenarioConfig const& cfg) {
  ComparisonReport r;
  r.cooperative = RunScenario(cfg, pon::DbaMode::kCooperative);
  r.status_report = RunScenario(cfg, pon::DbaMode::kStatusReport);
  r.metrics = Diff(r.cooperative, r.status_report);
  return r;
}

std::string ToJson(ComparisonReport const& r) {
  Json j;
  j["scenario"] = r.cooperative.scenario;
  j["seed"] = r.cooperative.seed;
  j["scenario_hash"] = {{"cti", r.cooperative.scenario_hash},
                        {"sr", r.status_report.scenario_hash}};
  j["hashes_match"] = r.cooperative.scenario_hash == r.status_report.scenario_hash;
  Json metrics = Json::array();
  for (auto const& m : r.metrics) {
    metrics.push_back({{"metric", m.metric},
                       {"cti", OptJson(m.cooperative)},
                       {"sr", OptJson(m.status_report)},
                       {"delta", OptJson(m.delta)},
                       {"ratio", OptJson(m.ratio)}});
  }
  j["metrics"] = std::move(metrics);
  return j.dump(2) + "\n";
}

}  // namespace ctipon::harness
