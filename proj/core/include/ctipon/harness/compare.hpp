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

#ifndef CTIPON_HARNESS_COMPARE_HPP_
#define CTIPON_HARNESS_COMPARE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ctipon/harness/scenario.hpp"
#include "ctipon/telemetry/metrics.hpp"

namespace ctipon::harness {

struct MetricDelta {
  std::string metric;
  std::optional<double> cooperative;
  std::optional<double> status_report;
  std::optional<double> delta;  // status_report - cooperative
  std::optional<double> ratio;  // status_report / cooperative
};

struct ComparisonReport {
  telemetry::RunReport cooperative;
  telemetry::RunReport status_report;
  std::vector<MetricDelta> metrics;

  MetricDelta const* Find(std::string const& metric) const;
};

/// Runs both DBA modes on the same scenario and seed.
ComparisonReport Compare(ScenarioConfig const& cfg);

/// Builds the per-metric table from two finished runs.
std::vector<MetricDelta> Diff(telemetry::RunReport const& cooperative,
                              telemetry::RunReport const& status_report);

std::string ToJson(ComparisonReport const& report);

}  // namespace ctipon::harness

#endif  // CTIPON_HARNESS_COMPARE_HPP_
