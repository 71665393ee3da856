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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "ctipon/telemetry/histogram.hpp"
#include "ctipon/telemetry/metrics.hpp"

namespace ctipon::telemetry {
namespace {

using sim::kMicrosecond;
using sim::kMillisecond;
using sim::kSecond;

pon::LatencySample Sample(SimTime enq, SimTime q, SimTime t,
                          pon::TrafficClass cls = pon::TrafficClass::kFronthaul) {
  static std::uint64_t id = 0;
  return {++id, 1, cls, 100, enq, enq + q, enq + t};
}

CollectorConfig Cfg() {
  CollectorConfig c;
  c.seed = 1;
  return c;
}

TEST(NearestRank, Examples) {
  std::vector<SimTime> v = {kMillisecond, 2 * kMillisecond, 3 * kMillisecond};
  EXPECT_EQ(NearestRank(v, 50), 2 * kMillisecond);
  EXPECT_EQ(NearestRank(v, 99), 3 * kMillisecond);
  EXPECT_EQ(NearestRank(v, 0), kMillisecond);
  EXPECT_FALSE(NearestRank({}, 50).has_value());
}

TEST(NearestRank, MatchesCountingDefinition) {
  sim::RngStream rng(8, "nr");
  for (int i = 0; i < 500; ++i) {
    std::vector<SimTime> v(1 + rng.Below(300));
    for (auto& x : v) x = static_cast<SimTime>(rng.Below(1000));
    std::sort(v.begin(), v.end());
    double p = rng.Uniform() * 100.0;
    SimTime got = *NearestRank(v, p);
    // Smallest value with at least p% of the samples at or below it.
    auto at_or_below = std::count_if(v.begin(), v.end(), [&](SimTime x) { return x <= got; });
    ASSERT_GE(static_cast<double>(at_or_below), p / 100.0 * v.size() - 1e-9);
    auto below = std::count_if(v.begin(), v.end(), [&](SimTime x) { return x < got; });
    ASSERT_LT(static_cast<double>(below), p / 100.0 * v.size() + 1e-9);
  }
}

TEST(Collector, MeanOfOneSample) {
  Collector c(Cfg(), "cti");
  c.Record(Sample(0, 100 * kMicrosecond, 150 * kMicrosecond));
  RunReport r = c.Finish(100 * kMillisecond);
  ASSERT_EQ(r.windows.size(), 1u);
  EXPECT_DOUBLE_EQ(*r.windows[0].queue_delay.mean, 100'000.0);
  EXPECT_DOUBLE_EQ(*r.aggregate.total_delay.mean, 150'000.0);
  EXPECT_EQ(r.windows[0].mode, "cti");
}

TEST(Collector, MedianOfThree) {
  Collector c(Cfg(), "sr");
  for (int ms : {3, 1, 2}) c.Record(Sample(ms, ms * kMillisecond, ms * kMillisecond));
  RunReport r = c.Finish(100 * kMillisecond);
  EXPECT_EQ(r.windows[0].queue_delay.p50, 2 * kMillisecond);
  EXPECT_EQ(r.windows[0].queue_delay.min, kMillisecond);
  EXPECT_EQ(r.windows[0].queue_delay.max, 3 * kMillisecond);
}

TEST(Collector, EmptyWindowHasAbsentStats) {
  Collector c(Cfg(), "cti");
  RunReport r = c.Finish(200 * kMillisecond);
  ASSERT_EQ(r.windows.size(), 2u);
  for (auto const& w : r.windows) {
    EXPECT_EQ(w.samples(), 0u);
    EXPECT_FALSE(w.queue_delay.mean.has_value());
    EXPECT_FALSE(w.queue_delay.p99.has_value());
  }
  std::string csv = Export(r, ExportFormat::kCsv);
  EXPECT_NE(csv.find("0,cti,0,,,,,,"), std::string::npos);
}

TEST(Collector, Utilization) {
  Collector c(Cfg(), "cti");
  c.RecordFrame(0, 77'760, 77'760, 0);
  RunReport r = c.Finish(100 * kMillisecond);
  EXPECT_EQ(r.windows[0].frames, 800u);
  EXPECT_DOUBLE_EQ(r.windows[0].utilization, 0.000625);
}

TEST(Collector, SnapshotIsACopy) {
  Collector c(Cfg(), "cti");
  c.Record(Sample(kMillisecond, 10, 20));
  c.AdvanceTo(2 * kMillisecond);
  MetricWindow a = c.Snapshot();
  MetricWindow b = c.Snapshot();
  EXPECT_EQ(a, b);
  c.Record(Sample(3 * kMillisecond, 10, 20));
  c.AdvanceTo(4 * kMillisecond);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.samples(), 1u);
  EXPECT_EQ(c.Snapshot().samples(), 2u);
}

TEST(Collector, WindowsCloseAfterGrace) {
  Collector c(Cfg(), "cti");
  c.Record(Sample(kMillisecond, 10, 20));
  EXPECT_TRUE(c.AdvanceTo(100 * kMillisecond).empty());
  auto closed = c.AdvanceTo(101 * kMillisecond);
  ASSERT_EQ(closed.size(), 1u);
  EXPECT_EQ(closed[0].samples(), 1u);
}

TEST(Collector, BackgroundKeptSeparate) {
  Collector c(Cfg(), "cti");
  c.Record(Sample(0, 10, 20));
  c.Record(Sample(0, 999, 1000, pon::TrafficClass::kBackground));
  RunReport r = c.Finish(100 * kMillisecond);
  EXPECT_EQ(r.aggregate.samples(), 1u);
  EXPECT_EQ(r.background_queue_delay.count, 1u);
  EXPECT_DOUBLE_EQ(*r.background_queue_delay.mean, 999.0);
}

TEST(Collector, ModeChangeWithinWindowIsMixed) {
  Collector c(Cfg(), "cti");
  c.SetModeLabel(150 * kMillisecond, "sr");
  RunReport r = c.Finish(300 * kMillisecond);
  ASSERT_EQ(r.windows.size(), 3u);
  EXPECT_EQ(r.windows[0].mode, "cti");
  EXPECT_EQ(r.windows[1].mode, "mixed");
  EXPECT_EQ(r.windows[2].mode, "sr");
}

TEST(Collector, SamplesAreConservedAcrossWindows) {
  CollectorConfig cfg = Cfg();
  cfg.horizon = kSecond;
  Collector c(cfg, "cti");
  sim::RngStream rng(9, "conserve");
  std::uint64_t n = 0;
  for (SimTime t = 0; t < kSecond; t += static_cast<SimTime>(rng.Below(200 * kMicrosecond))) {
    c.Record(Sample(t, 10, static_cast<SimTime>(rng.Below(3 * kMillisecond))));
    ++n;
    c.AdvanceTo(t);
  }
  RunReport r = c.Finish(kSecond);
  std::uint64_t sum = 0;
  for (auto const& w : r.windows) sum += w.samples();
  EXPECT_EQ(r.windows.size(), 10u);
  EXPECT_EQ(sum, n);
  EXPECT_EQ(r.aggregate.samples(), n);
  EXPECT_EQ(r.histogram.total(), n);
  EXPECT_EQ(r.late_samples, 0u);
}

TEST(Histogram, PercentileWithinOneBin) {
  sim::RngStream rng(10, "hist");
  LatencyHistogram h;
  std::vector<SimTime> v;
  for (int i = 0; i < 20'000; ++i) {
    SimTime x = static_cast<SimTime>(std::exp(rng.Normal() * 1.5 + 11.0));
    h.Add(x);
    v.push_back(x);
  }
  std::sort(v.begin(), v.end());
  for (double p : {1.0, 50.0, 95.0, 99.0}) {
    SimTime exact = *NearestRank(v, p);
    SimTime est = *h.Percentile(p);
    EXPECT_GE(est, exact);
    EXPECT_LE(est - exact, h.BinWidth(exact)) << p;
  }
  EXPECT_FALSE(LatencyHistogram().Percentile(50).has_value());
}

TEST(Export, HeaderOnlyCsvForNoWindows) {
  RunReport r;
  EXPECT_EQ(Export(r, ExportFormat::kCsv), std::string(kCsvHeader) + "\n");
  EXPECT_EQ(Export(r, ExportFormat::kJsonLines), "");
}

std::vector<std::string> Split(std::string const& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

TEST(Export, CsvAndJsonLinesAgree) {
  CollectorConfig cfg = Cfg();
  Collector c(cfg, "cti");
  sim::RngStream rng(11, "export");
  for (int i = 0; i < 5000; ++i) {
    SimTime t = static_cast<SimTime>(rng.Below(300 * kMillisecond));
    c.Record(Sample(t, static_cast<SimTime>(rng.Below(500'000)), 600'000));
  }
  c.RecordFrame(0, 1000, 900, 100);
  c.RecordCti(5);
  RunReport r = c.Finish(400 * kMillisecond);

  std::stringstream csv(Export(r, ExportFormat::kCsv));
  std::stringstream jsonl(Export(r, ExportFormat::kJsonLines));
  std::string header;
  std::getline(csv, header);
  auto cols = Split(header);
  ASSERT_EQ(cols.size(), 14u);
  std::string cl, jl;
  std::size_t rows = 0;
  while (std::getline(csv, cl)) {
    ASSERT_TRUE(std::getline(jsonl, jl));
    auto fields = Split(cl);
    ASSERT_EQ(fields.size(), cols.size()) << cl;
    auto j = nlohmann::json::parse(jl);
    auto const& w = r.windows[rows];
    for (std::size_t k = 0; k < cols.size(); ++k) {
      auto const& v = j.at(cols[k]);
      if (v.is_null()) {
        EXPECT_TRUE(fields[k].empty()) << cols[k];
      } else if (v.is_string()) {
        EXPECT_EQ(fields[k], v.get<std::string>());
      } else {
        EXPECT_NEAR(std::stod(fields[k]), v.get<double>(), 1e-3) << cols[k];
      }
    }
    EXPECT_EQ(std::stoll(fields[0]), w.window_start);
    EXPECT_EQ(std::stoull(fields[2]), w.samples());
    if (w.queue_delay.mean) {
      EXPECT_NEAR(std::stod(fields[3]) * 1000.0, *w.queue_delay.mean, 0.5);
      EXPECT_NEAR(std::stod(fields[6]) * 1000.0, static_cast<double>(*w.queue_delay.p99), 0.5);
    }
    ++rows;
  }
  EXPECT_EQ(rows, r.windows.size());
  EXPECT_FALSE(std::getline(jsonl, jl));
}

TEST(Export, Deterministic) {
  auto run = [] {
    Collector c(Cfg(), "cti");
    sim::RngStream rng(12, "det");
    for (int i = 0; i < 100'000; ++i) {
      c.Record(Sample(static_cast<SimTime>(rng.Below(200 * kMillisecond)),
                      static_cast<SimTime>(rng.Below(1'000'000)), 2'000'000));
    }
    return c.Finish(200 * kMillisecond);
  };
  RunReport a = run();
  RunReport b = run();
  EXPECT_EQ(a, b);
  EXPECT_EQ(Export(a, ExportFormat::kCsv), Export(b, ExportFormat::kCsv));
  EXPECT_EQ(ToJson(a), ToJson(b));
}

}  // namespace
}  // namespace ctipon::telemetry
