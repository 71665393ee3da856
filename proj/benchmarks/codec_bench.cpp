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

#include "ctipon/cti/codec.hpp"

namespace {

using namespace ctipon;

cti::CtiReport Report(std::size_t entries) {
  cti::CtiReport r;
  r.seq = 42;
  r.report_time = 123'456'789;
  for (std::size_t i = 0; i < entries; ++i) {
    r.entries.push_back({static_cast<TcontId>(i), 3780, 5'000'000, 5'020'000});
  }
  return r;
}

void BM_Encode(benchmark::State& state) {
  auto r = Report(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cti::Encode(r));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(cti::EncodedSize(r.entries.size())));
}
BENCHMARK(BM_Encode)->Arg(1)->Arg(4)->Arg(64)->Arg(1024);

void BM_Decode(benchmark::State& state) {
  auto bytes = cti::Encode(Report(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(cti::Decode(bytes));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_Decode)->Arg(1)->Arg(4)->Arg(64)->Arg(1024);

}  // namespace
