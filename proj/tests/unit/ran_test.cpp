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

#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "ctipon/ran/scheduler.hpp"
#include "ctipon/ran/traffic.hpp"
#include "ctipon/sim/rng.hpp"

namespace ctipon::ran {
namespace {

using sim::kMicrosecond;
using sim::kMillisecond;

// Independent TBS reference: resource elements times bits per symbol times
// code rate, in exact rational arithmetic, floored to whole bytes.
std::uint64_t TbsOracle(int n_prbs, int bits, int num, int den) {
  long double re = static_cast<long double>(n_prbs) * 12 * 14;
  long double bits_total = re * bits * num;
  return static_cast<std::uint64_t>(std::floor(bits_total / (8.0L * den)));
}

// PRBs handed out one at a time, lowest index first, skipping satisfied demands.
std::vector<int> OneAtATime(int total, std::vector<int> const& demands) {
  std::vector<int> out(demands.size(), 0);
  bool progress = true;
  while (total > 0 && progress) {
    progress = false;
    for (std::size_t i = 0; i < demands.size() && total > 0; ++i) {
      if (out[i] < demands[i]) {
        ++out[i];
        --total;
        progress = true;
      }
    }
  }
  return out;
}

UeTrafficProfile Constant(double bps) {
  UeTrafficProfile p;
  p.kind = ProfileKind::kConstantRate;
  p.mean_rate_bps = bps;
  return p;
}

TEST(Tbs, ZeroPrbsCarryNothing) { EXPECT_EQ(TbsFromPrbs(0, 1), 0u); }

TEST(Tbs, QpskHalfRateTenPrbs) { EXPECT_EQ(TbsFromPrbs(10, 1), 210u); }

TEST(Tbs, Qam64ThreeQuarterRateFullCarrier) {
  // 51 * 12 * 14 * 6 * 0.75 / 8 = 4819.5
  EXPECT_EQ(TbsFromPrbs(51, 6), 4819u);
  EXPECT_EQ(TbsFromPrbs(51, 6), TbsOracle(51, 6, 3, 4));
}

TEST(Tbs, MatchesOracleForWholeTable) {
  for (int mcs = 0; mcs < McsTableSize(); ++mcs) {
    Mcs const& m = McsEntry(mcs);
    std::uint64_t prev = 0;
    for (int n = 0; n <= 273; ++n) {
      std::uint64_t tbs = TbsFromPrbs(n, mcs);
      ASSERT_EQ(tbs, TbsOracle(n, m.bits_per_symbol, m.rate_num, m.rate_den));
      ASSERT_GE(tbs, prev);
      prev = tbs;
    }
  }
  EXPECT_THROW(McsEntry(McsTableSize()), std::out_of_range);
}

TEST(Tbs, PrbsForBytesIsSmallestCoveringCount) {
  for (int mcs = 0; mcs < McsTableSize(); ++mcs) {
    for (std::uint64_t bytes : {1ull, 100ull, 209ull, 210ull, 211ull, 4819ull, 100000ull}) {
      int n = PrbsForBytes(bytes, mcs, 51);
      if (n < 51) {
        EXPECT_GE(TbsFromPrbs(n, mcs), bytes);
      }
      if (n > 0) {
        EXPECT_LT(TbsFromPrbs(n - 1, mcs), bytes);
      }
    }
  }
  EXPECT_EQ(PrbsForBytes(0, 9, 51), 0);
}

TEST(Fronthaul, ZeroPrbsEmitNothing) {
  EXPECT_EQ(FronthaulBytesForPrbs(0, FronthaulFormat{9, 36}), 0u);
}

TEST(Fronthaul, TenPrbsNineBitIq) {
  EXPECT_EQ(FronthaulBytesForPrbs(10, FronthaulFormat{9, 0}), 3780u);
  EXPECT_EQ(FronthaulBytesForPrbs(10, FronthaulFormat{9, 36}), 4284u);
}

TEST(Fronthaul, NonDecreasingInPrbs) {
  for (int bw : {4, 8, 9, 12, 16}) {
    for (std::uint32_t ov : {0u, 36u}) {
      FronthaulFormat f{bw, ov};
      std::uint64_t prev = 0;
      for (int n = 0; n <= 273; ++n) {
        auto b = FronthaulBytesForPrbs(n, f);
        // Per symbol: ceil(n * 12 * 2 * bw / 8) + overhead, 14 symbols.
        std::uint64_t oracle =
            n == 0 ? 0 : 14 * ((static_cast<std::uint64_t>(n) * 24 * bw + 7) / 8 + ov);
        ASSERT_EQ(b, oracle);
        ASSERT_GE(b, prev);
        prev = b;
      }
    }
  }
}

TEST(Arrival, SumsConfiguredTerms) {
  SlotConfig cfg;
  UplinkGrant g;
  g.tx_slot = 10;
  EXPECT_EQ(ArrivalTime(g, cfg), 11 * kMillisecond + 50 * kMicrosecond);
  cfg.ru_processing_delay = 0;
  EXPECT_EQ(ArrivalTime(g, cfg), 11 * kMillisecond);
}

TEST(Arrival, NegativeArrivalIsAnError) {
  SlotConfig cfg;
  cfg.du_timing_advance = 2 * kMillisecond;
  UplinkGrant g;
  g.tx_slot = 0;
  EXPECT_THROW(ArrivalTime(g, cfg), TimingError);
}

TEST(Split, MatchesOneAtATimeRoundRobin) {
  sim::RngStream rng(5, "split");
  for (int trial = 0; trial < 2000; ++trial) {
    int total = static_cast<int>(rng.Below(120));
    std::vector<int> demands(1 + rng.Below(8));
    for (auto& d : demands) d = static_cast<int>(rng.Below(60));
    auto got = SplitWholeUnits(total, demands);
    ASSERT_EQ(got, OneAtATime(total, demands)) << "trial " << trial;
  }
}

TEST(Schedule, EmptyBuffersNoGrants) {
  std::vector<UeState> ues;
  ues.emplace_back(1, 1, 9, Constant(0), 1);
  EXPECT_TRUE(ScheduleSlot(0, ues, SlotConfig{}).empty());
}

TEST(Schedule, SaturatedUeGetsWholeCarrier) {
  std::vector<UeState> ues;
  ues.emplace_back(1, 1, 9, Constant(0), 1);
  ues[0].buffer_bytes = 1'000'000;
  auto g = ScheduleSlot(3, ues, SlotConfig{});
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].n_prbs, 51);
  EXPECT_EQ(g[0].tx_slot, 7);
  EXPECT_EQ(g[0].tbs_bytes, TbsFromPrbs(51, 9));
  EXPECT_EQ(ues[0].reserved_bytes, g[0].payload_bytes);
}

TEST(Schedule, TwoBackloggedUesSplitRemainderToLowerId) {
  std::vector<UeState> ues;
  ues.emplace_back(7, 1, 9, Constant(0), 1);
  ues.emplace_back(3, 1, 9, Constant(0), 1);
  for (auto& u : ues) u.buffer_bytes = 1'000'000;
  auto g = ScheduleSlot(0, ues, SlotConfig{});
  std::map<UeId, int> prbs;
  for (auto const& x : g) prbs[x.ue_id] = x.n_prbs;
  EXPECT_EQ(prbs[3], 26);
  EXPECT_EQ(prbs[7], 25);
}

// PRB conservation, work conservation, and per-UE buffer conservation over a
// randomized multi-UE run.
TEST(ScheduleProperty, ConservationOverRandomRun) {
  sim::RngStream rng(17, "sched-run");
  SlotConfig cfg;
  std::vector<UeState> ues;
  for (UeId id = 1; id <= 5; ++id) {
    UeTrafficProfile p;
    p.kind = static_cast<ProfileKind>(id % 3);
    p.mean_rate_bps = 4e6 * static_cast<double>(id);
    ues.emplace_back(id, 1, static_cast<int>(id % McsTableSize()), p, 99);
  }
  std::map<std::int64_t, std::vector<UplinkGrant>> in_flight;
  for (std::int64_t slot = 0; slot < 3000; ++slot) {
    if (auto it = in_flight.find(slot); it != in_flight.end()) {
      for (auto const& g : it->second) {
        for (auto& u : ues) {
          if (u.id == g.ue_id) Transmit(u, g);
        }
      }
      in_flight.erase(it);
    }
    for (auto& u : ues) GenTraffic(u, slot, cfg.slot_duration);
    bool backlog = false;
    for (auto const& u : ues) backlog = backlog || u.unreserved_bytes() > 0;
    auto grants = ScheduleSlot(slot, ues, cfg);
    int used = 0;
    for (auto const& g : grants) {
      used += g.n_prbs;
      ASSERT_LE(g.payload_bytes, g.tbs_bytes);
    }
    ASSERT_LE(used, cfg.prbs_total);
    if (backlog) {
      ASSERT_FALSE(grants.empty()) << "slot " << slot;
    }
    in_flight[slot + cfg.k2] = grants;
  }
  for (auto const& u : ues) {
    EXPECT_EQ(u.generated_bytes, u.transmitted_bytes + u.buffer_bytes) << "ue " << u.id;
  }
}

TEST(Traffic, ConstantRateBytesPerSlot) {
  UeState ue(1, 1, 9, Constant(8e6), 1);
  EXPECT_EQ(GenTraffic(ue, 0, kMillisecond), 1000u);
  EXPECT_EQ(ue.buffer_bytes, 1000u);
}

TEST(Traffic, FractionalRatesCarryOver) {
  UeState ue(1, 1, 9, Constant(1.2e6), 1);  // 150 B per slot at 1 ms
  std::uint64_t total = 0;
  for (int s = 0; s < 1000; ++s) total += GenTraffic(ue, s, 125 * kMicrosecond);
  EXPECT_EQ(total, 150'000u / 8);
}

TEST(Traffic, ScaleZeroAddsNothing) {
  for (auto kind : {ProfileKind::kConstantRate, ProfileKind::kOnOff, ProfileKind::kVideoLike}) {
    UeTrafficProfile p;
    p.kind = kind;
    p.mean_rate_bps = 5e7;
    p.scale = 0;
    UeState ue(1, 1, 9, p, 1);
    for (int s = 0; s < 200; ++s) ASSERT_EQ(GenTraffic(ue, s, kMillisecond), 0u);
  }
}

TEST(Traffic, OnOffIsSilentWhenOff) {
  UeTrafficProfile p;
  p.kind = ProfileKind::kOnOff;
  p.mean_rate_bps = 8e6;
  UeState ue(1, 1, 9, p, 1);
  EXPECT_EQ(GenTraffic(ue, 15, kMillisecond), 0u);
  // Peak rate doubles to keep the 50 % duty-cycle mean.
  EXPECT_EQ(GenTraffic(ue, 21, kMillisecond), 2000u);
}

TEST(Traffic, VideoLikeMeanRate) {
  UeTrafficProfile p;
  p.kind = ProfileKind::kVideoLike;
  p.mean_rate_bps = 5e7;
  UeState ue(1, 1, 9, p, 3);
  std::uint64_t total = 0;
  int const slots = 200'000;
  for (int s = 0; s < slots; ++s) total += GenTraffic(ue, s, kMillisecond);
  double rate = static_cast<double>(total) * 8 / (slots * 1e-3);
  // 6000 frames with sigma 0.4: standard error of the mean is about 0.5 %.
  EXPECT_NEAR(rate, 5e7, 5e7 * 0.03);
}

TEST(Traffic, ProfileNamesRoundTrip) {
  for (auto kind : {ProfileKind::kConstantRate, ProfileKind::kOnOff, ProfileKind::kVideoLike}) {
    EXPECT_EQ(ParseProfileKind(ToString(kind)), kind);
  }
  EXPECT_THROW(ParseProfileKind("bursty"), std::invalid_argument);
}

}  // namespace
}  // namespace ctipon::ran
