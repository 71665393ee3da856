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

#include <benchmark/benchmark.h>

#include "ctipon/pon/bwmap.hpp"
#include "ctipon/pon/dba.hpp"

namespace {

using namespace ctipon;

std::vector<pon::TcontDemand> Demands(std::size_t n, std::uint64_t each) {
  std::vector<pon::TcontDemand> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back({static_cast<TcontId>(i + 1), each, 0});
  return d;
}

void BM_SrStep(benchmark::State& state) {
  pon::PonConfig cfg;
  auto d = Demands(static_cast<std::size_t>(state.range(0)), 20'000);
  std::uint64_t f = 0;
  for (auto _ : state) benchmark::DoNotOptimize(pon::DbaSrStep(f++, d, cfg));
}
BENCHMARK(BM_SrStep)->Arg(4)->Arg(32)->Arg(128);

void BM_CtiStep(benchmark::State& state) {
  pon::PonConfig cfg;
  auto d = Demands(static_cast<std::size_t>(state.range(0)), 5'000);
  std::uint64_t f = 0;
  for (auto _ : state) {
    state.PauseTiming();
    std::deque<pon::PendingEntry> pending;
    for (std::size_t i = 0; i < d.size(); ++i) {
      cti::CtiEntry e{static_cast<TcontId>(i + 1), 3780, cfg.FrameStart(f), cfg.FrameStart(f)};
      pending.push_back(pon::MakePendingEntry(e, 0, cti::CtiTiming{}, i));
    }
    state.ResumeTiming();
    benchmark::DoNotOptimize(pon::DbaCtiStep(f++, pending, d, cfg));
  }
}
BENCHMARK(BM_CtiStep)->Arg(4)->Arg(32);

void BM_Validate(benchmark::State& state) {
  pon::PonConfig cfg;
  auto map = pon::DbaSrStep(0, Demands(static_cast<std::size_t>(state.range(0)), 1'000), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(pon::ValidateBwMap(map, cfg));
}
BENCHMARK(BM_Validate)->Arg(8)->Arg(64)->Arg(512);

}  // namespace
