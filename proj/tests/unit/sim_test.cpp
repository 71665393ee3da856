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

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "ctipon/sim/rng.hpp"
#include "ctipon/sim/simulator.hpp"

namespace ctipon::sim {
namespace {

TEST(Simulator, NowIsZeroBeforeRunning) {
  Simulator s;
  EXPECT_EQ(s.now(), 0);
}

TEST(Simulator, ZeroDelayEventPrecedesLaterOnes) {
  Simulator s;
  std::vector<int> order;
  s.Schedule(10, 1, [&] { order.push_back(2); });
  s.Schedule(0, 1, [&] { order.push_back(1); });
  s.RunUntil(100);
  EXPECT_EQ(order, (std::vector<int>{1, 2}));
}

TEST(Simulator, TiesFireInScheduleOrder) {
  Simulator s;
  s.set_record_trace(true);
  for (int i = 0; i < 7; ++i) s.Schedule(5, 1, [] {});
  s.RunUntil(5);
  ASSERT_EQ(s.trace().size(), 7u);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(s.trace()[i].seq, i);
}

TEST(Simulator, SchedulingInThePastThrows) {
  Simulator s;
  s.RunUntil(kMicrosecond);
  EXPECT_THROW(s.Schedule(kMicrosecond - 1, 1, [] {}), SchedulingError);
  EXPECT_THROW(s.RunUntil(0), SchedulingError);
}

TEST(Simulator, EmptyRunAdvancesClock) {
  Simulator s;
  auto r = s.RunUntil(kSecond);
  EXPECT_EQ(r.events_processed, 0u);
  EXPECT_EQ(s.now(), kSecond);
}

TEST(Simulator, RunUntilStopsAtHorizon) {
  Simulator s;
  for (SimTime t : {10, 20, 30}) s.Schedule(t * kMicrosecond, 1, [] {});
  auto r = s.RunUntil(25 * kMicrosecond);
  EXPECT_EQ(r.events_processed, 2u);
  EXPECT_EQ(s.now(), 25 * kMicrosecond);
  EXPECT_EQ(s.pending_count(), 1u);
}

TEST(Simulator, NowInsideHandlerIsFireTime) {
  Simulator s;
  SimTime seen = -1;
  s.Schedule(42, 1, [&] { seen = s.now(); });
  s.RunUntil(100);
  EXPECT_EQ(seen, 42);
}

TEST(Simulator, CancelledEventsDoNotFire) {
  Simulator s;
  int fired = 0;
  auto t = s.Schedule(5, 1, [&] { ++fired; });
  s.Schedule(6, 1, [&] { ++fired; });
  EXPECT_TRUE(s.Cancel(t));
  EXPECT_FALSE(s.Cancel(t));
  s.RunUntil(10);
  EXPECT_EQ(fired, 1);
  EXPECT_EQ(s.cancelled_count(), 1u);
}

// Randomly scheduled events, including ones scheduled from handlers, come
// out in (fire_at, seq) order, and nothing is lost.
TEST(SimulatorProperty, DeliveryIsTotallyOrderedAndLossless) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed, "sim-property");
    Simulator s;
    s.set_record_trace(true);
    std::vector<Ticket> tickets;
    std::function<void()> spawn = [&] {
      if (rng.Below(3) == 0) {
        s.ScheduleIn(static_cast<SimTime>(rng.Below(50)), 2, spawn);
      }
    };
    for (int i = 0; i < 500; ++i) {
      tickets.push_back(s.Schedule(static_cast<SimTime>(rng.Below(1000)), 1, spawn));
    }
    for (int i = 0; i < 50; ++i) s.Cancel(tickets[rng.Below(tickets.size())]);
    s.RunUntil(800);

    auto const& tr = s.trace();
    for (std::size_t i = 1; i < tr.size(); ++i) {
      bool ordered = tr[i - 1].fire_at < tr[i].fire_at ||
                     (tr[i - 1].fire_at == tr[i].fire_at && tr[i - 1].seq < tr[i].seq);
      ASSERT_TRUE(ordered) << "seed " << seed << " at " << i;
    }
    EXPECT_EQ(s.scheduled_count(),
              s.delivered_count() + s.cancelled_count() + s.pending_count());
  }
}

TEST(SimulatorProperty, SameInputsSameDigest) {
  auto run = [](std::uint64_t seed) {
    RngStream rng(seed, "digest");
    Simulator s;
    for (int i = 0; i < 1000; ++i) {
      s.Schedule(static_cast<SimTime>(rng.Below(10'000)), static_cast<ComponentId>(i % 3), [] {});
    }
    s.RunUntil(10'000);
    return s.trace_digest();
  };
  EXPECT_EQ(run(3), run(3));
  EXPECT_NE(run(3), run(4));
}

TEST(RngStream, ReproducibleAndIndependent) {
  RngStream a(9, "x"), b(9, "x"), c(9, "y"), d(10, "x");
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 16; ++i) {
    va.push_back(a.NextU64());
    vb.push_back(b.NextU64());
    vc.push_back(c.NextU64());
    vd.push_back(d.NextU64());
  }
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_NE(va, vd);
}

TEST(RngStream, DistributionsHaveExpectedMoments) {
  RngStream r(1, "moments");
  constexpr int n = 200'000;
  double u = 0, e = 0, z = 0, z2 = 0;
  for (int i = 0; i < n; ++i) {
    double x = r.Uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    u += x;
    e += r.Exponential(5.0);
    double g = r.Normal();
    z += g;
    z2 += g * g;
  }
  // Tolerances are about five standard errors.
  EXPECT_NEAR(u / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(e / n, 5.0, 5 * 5.0 / std::sqrt(n));
  EXPECT_NEAR(z / n, 0.0, 5 / std::sqrt(n));
  EXPECT_NEAR(z2 / n, 1.0, 5 * std::sqrt(2.0 / n));
}

TEST(RngStream, BelowStaysInRange) {
  RngStream r(2, "below");
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    auto v = r.Below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

}  // namespace
}  // namespace ctipon::sim
