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

#include "ctipon/pon/bwmap.hpp"
#include "ctipon/pon/onu.hpp"
#include "support/oracles.hpp"

namespace ctipon::pon {
namespace {

using sim::kMicrosecond;

PonConfig NoHeader() {
  PonConfig c;
  c.fragment_header_bytes = 0;
  return c;
}

Packet Pkt(std::uint64_t id, std::uint32_t bytes, SimTime at = 0) {
  return Packet{id, bytes, at, TrafficClass::kFronthaul};
}

TEST(PonConfig, XgsPonFrame) {
  PonConfig c;
  // 9.95328e9 b/s * 125e-6 s / 8
  EXPECT_EQ(c.capacity_bytes(), 155'520u);
  EXPECT_EQ(c.usable_bytes(), 155'520u);
  EXPECT_EQ(c.poll_frames(), 4u);
  EXPECT_EQ(c.OffsetTimeFloor(155'520), 125 * kMicrosecond);
  EXPECT_EQ(c.OffsetTimeFloor(77'760), 62'500);
  EXPECT_EQ(c.OffsetAtOrAfter(62'500), 77'760u);
  // 3780 B at 9.95328 Gb/s = 3038.194... ns
  EXPECT_EQ(c.SerializationTime(3780), 3039);
  EXPECT_EQ(PropagationDelay(10.0), 50 * kMicrosecond);
}

TEST(PonConfig, OffsetTimeRoundTripProperty) {
  PonConfig c;
  sim::RngStream rng(3, "offsets");
  for (int i = 0; i < 10'000; ++i) {
    std::uint64_t off = rng.Below(c.usable_bytes() + 1);
    ASSERT_LE(c.OffsetTimeFloor(off), c.OffsetTimeCeil(off));
    ASSERT_LE(c.OffsetTimeCeil(off) - c.OffsetTimeFloor(off), 1);
    SimTime rel = static_cast<SimTime>(rng.Below(125'001));
    std::uint64_t at = c.OffsetAtOrAfter(rel);
    ASSERT_GE(c.OffsetTimeFloor(at), rel);
    if (at > 0) {
      ASSERT_LT(c.OffsetTimeFloor(at - 1), rel);
    }
  }
}

TEST(PonConfig, RejectsFiberBeyondFrameBudget) {
  PonConfig c;
  EXPECT_NO_THROW(c.Validate(PropagationDelay(10.0)));
  EXPECT_THROW(c.Validate(PropagationDelay(20.0)), std::invalid_argument);
  c.sr_poll_interval = 100 * kMicrosecond;
  EXPECT_THROW(c.Validate(0), std::invalid_argument);
}

TEST(TcontQueue, EnqueueStatusAndOverflow) {
  TcontQueue q({1, 1, TrafficClass::kFronthaul}, 5000);
  EXPECT_TRUE(q.Enqueue(Pkt(1, 3780)));
  EXPECT_EQ(q.StatusReport(0, 0), 3780u);
  EXPECT_EQ(q.StatusReport(0, 8), 3788u);
  EXPECT_FALSE(q.Enqueue(Pkt(2, 2000)));
  EXPECT_EQ(q.dropped_bytes(), 2000u);
  EXPECT_EQ(q.occupancy_bytes(), 3780u);
  EXPECT_TRUE(q.Enqueue(Pkt(3, 1000, 10)));
  // Packets not yet present at the report instant are excluded.
  EXPECT_EQ(q.StatusReport(5, 0), 3780u);
  EXPECT_EQ(q.StatusReport(10, 0), 4780u);
}

TEST(TcontQueue, PartialTransmitShrinksReport) {
  PonConfig c = NoHeader();
  TcontQueue q({1, 1, TrafficClass::kFronthaul}, 1'000'000);
  q.Enqueue(Pkt(1, 3780));
  auto r = q.Transmit({0, 40}, 1000, c, 0);
  EXPECT_EQ(r.used_bytes, 1000u);
  EXPECT_TRUE(r.samples.empty());
  EXPECT_EQ(q.StatusReport(1000, 0), 2780u);
}

TEST(TcontQueue, FifoOrderAndFragmentHeaders) {
  PonConfig c;
  TcontQueue q({1, 1, TrafficClass::kFronthaul}, 1'000'000);
  q.Enqueue(Pkt(1, 100));
  q.Enqueue(Pkt(2, 100));
  q.Enqueue(Pkt(3, 100));
  auto r = q.Transmit({0, 40}, 220, c, 0);
  ASSERT_EQ(r.samples.size(), 2u);
  EXPECT_EQ(r.samples[0].packet_id, 1u);
  EXPECT_EQ(r.samples[1].packet_id, 2u);
  EXPECT_EQ(r.used_bytes, 216u);
  // 4 bytes left is not enough for a header plus payload.
  EXPECT_EQ(q.occupancy_bytes(), 100u);
}

class Execute : public ::testing::Test {
 protected:
  std::vector<OnuLink> onus{{1, PropagationDelay(10.0)}};
  std::vector<TcontInfo> tconts{{1, 1, TrafficClass::kFronthaul}};
};

TEST_F(Execute, ExactGrantWastesNothing) {
  PonConfig c = NoHeader();
  UpstreamPath up(c, onus, tconts);
  up.Enqueue(1, Pkt(1, 3780));
  auto x = up.ExecuteFrame({0, {{1, 40, 3780, GrantKind::kStatusReport}}});
  EXPECT_EQ(x.granted_bytes, 3780u);
  EXPECT_EQ(x.used_bytes, 3780u);
  EXPECT_EQ(x.wasted_bytes, 0u);
  ASSERT_EQ(x.samples.size(), 1u);
  // Last byte at offset 3820, then 50 us of fiber.
  SimTime end = (3820LL * 125'000 + 155'519) / 155'520;
  EXPECT_EQ(x.samples[0].total_delay(), end + 50 * kMicrosecond);
  EXPECT_NEAR(static_cast<double>(x.samples[0].total_delay()), 53'070.0, 10.0);
  EXPECT_EQ(x.samples[0].queue_delay(), (40LL * 125'000) / 155'520);
}

TEST_F(Execute, ZeroWaitTotalDelayIsSerializationPlusFiber) {
  PonConfig c = NoHeader();
  UpstreamPath up(c, onus, tconts);
  SimTime grant_start = c.OffsetTimeFloor(40);
  up.Enqueue(1, Pkt(1, 3780, grant_start));
  auto x = up.ExecuteFrame({0, {{1, 40, 3780, GrantKind::kStatusReport}}});
  ASSERT_EQ(x.samples.size(), 1u);
  EXPECT_EQ(x.samples[0].queue_delay(), 0);
  // 3780 * 8 / 9.95328e9 s = 3.038 us, plus 50 us of fiber.
  EXPECT_NEAR(static_cast<double>(x.samples[0].total_delay()), 53'038.0, 2.0);
}

TEST_F(Execute, OversizedGrantCountsWaste) {
  PonConfig c = NoHeader();
  UpstreamPath up(c, onus, tconts);
  up.Enqueue(1, Pkt(1, 3780));
  auto x = up.ExecuteFrame({0, {{1, 40, 4000, GrantKind::kStatusReport}}});
  EXPECT_EQ(x.wasted_bytes, 220u);
}

TEST_F(Execute, PollCarriesReportOnly) {
  PonConfig c;
  UpstreamPath up(c, onus, tconts);
  up.Enqueue(1, Pkt(1, 500));
  auto x = up.ExecuteFrame({2, {{1, 40, 4, GrantKind::kPoll}}});
  EXPECT_TRUE(x.samples.empty());
  EXPECT_EQ(x.used_bytes, 4u);
  ASSERT_EQ(x.reports.size(), 1u);
  EXPECT_EQ(x.reports[0].value, 508u);
  EXPECT_EQ(x.reports[0].generated_at, c.FrameStart(2) + c.OffsetTimeFloor(40));
  EXPECT_GT(x.reports[0].available_at, x.reports[0].generated_at + 50 * kMicrosecond);
}

TEST_F(Execute, PacketsArrivingAfterGrantStartWait) {
  PonConfig c;
  UpstreamPath up(c, onus, tconts);
  up.Enqueue(1, Pkt(1, 100, 10 * kMicrosecond));
  auto x = up.ExecuteFrame({0, {{1, 40, 200, GrantKind::kCooperative}}});
  EXPECT_TRUE(x.samples.empty());
  EXPECT_EQ(x.wasted_bytes, 200u);
}

bool Has(std::vector<Violation> const& v, ViolationKind k) {
  return std::any_of(v.begin(), v.end(), [&](Violation const& x) { return x.kind == k; });
}

TEST(Validator, Examples) {
  PonConfig c;
  EXPECT_TRUE(ValidateBwMap({0, {}}, c).empty());
  EXPECT_TRUE(ValidateBwMap({0, {{1, 40, 1000}, {2, 1144, 1000}}}, c).empty());
  // One byte short of the guard + preamble spacing.
  EXPECT_TRUE(Has(ValidateBwMap({0, {{1, 40, 1000}, {2, 1143, 1000}}}, c), ViolationKind::kOverlap));
  EXPECT_TRUE(Has(ValidateBwMap({0, {{1, 0, 1000}}}, c), ViolationKind::kGuard));
  EXPECT_TRUE(Has(ValidateBwMap({0, {{1, 40, 155'420}}}, c), ViolationKind::kGuard));
  EXPECT_TRUE(ValidateBwMap({0, {{1, 40, 155'416}}}, c).empty());
  EXPECT_TRUE(Has(ValidateBwMap({0, {{1, 40, 1001}}}, c), ViolationKind::kGranularity));
  EXPECT_TRUE(Has(ValidateBwMap({0, {{1, 40, 0}}}, c), ViolationKind::kGranularity));
  EXPECT_TRUE(Has(ValidateBwMap({0, {{2, 2000, 100}, {1, 40, 100}}}, c), ViolationKind::kOrdering));

  PonConfig bare = c;
  bare.burst_overhead_bytes = 0;
  bare.guard_bytes = 0;
  EXPECT_TRUE(Has(ValidateBwMap({0, {{1, 0, 1000}, {2, 999, 100}}}, bare), ViolationKind::kOverlap));
  EXPECT_TRUE(ValidateBwMap({0, {{1, 0, 1000}, {2, 1000, 100}}}, bare).empty());
}

TEST(Validator, CapacityCountsPerBurstOverhead) {
  PonConfig c;
  BwMap m;
  std::uint32_t off = 40;
  // 1500 bursts of 4 B each need 1500 * 108 B > 155,520 B.
  for (int i = 0; i < 1500; ++i) {
    m.allocations.push_back({static_cast<TcontId>(i), off, 4});
    off += 108;
  }
  EXPECT_TRUE(Has(ValidateBwMap(m, c), ViolationKind::kCapacity));
}

TEST(Validator, OverlapAgreesWithPairwiseOracle) {
  PonConfig c;
  sim::RngStream rng(4, "validator");
  int overlapping = 0;
  for (int i = 0; i < 3000; ++i) {
    BwMap m = testing::RandomMap(rng, c);
    bool oracle = testing::BruteForceOverlap(m, c);
    overlapping += oracle;
    ASSERT_EQ(testing::ValidatorReportsOverlap(m, c), oracle) << FormatTrace(m);
  }
  EXPECT_GT(overlapping, 300);
  EXPECT_LT(overlapping, 2900);
}

TEST(Trace, Format) {
  BwMap m{7, {{3, 40, 100}, {4, 300, 8}}};
  EXPECT_EQ(FormatTrace(m), "7,3,40,100\n7,4,300,8\n");
}

}  // namespace
}  // namespace ctipon::pon
