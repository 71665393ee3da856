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

#include "ctipon/harness/scenario.hpp"
#include "ctipon/harness/simulation.hpp"

namespace {

using namespace ctipon;

// Simulated time per iteration is 100 ms; the reported rate is the
// simulation speed-up over real time.
void BM_DefaultScenario(benchmark::State& state) {
  auto cfg = harness::LoadScenario(std::string(CTIPON_SCENARIO_DIR) + "/default.yaml");
  cfg.duration = 100 * sim::kMillisecond;
  auto mode = state.range(0) == 0 ? pon::DbaMode::kCooperative : pon::DbaMode::kStatusReport;
  for (auto _ : state) benchmark::DoNotOptimize(harness::RunScenario(cfg, mode));
  state.counters["sim_s_per_s"] = benchmark::Counter(
      0.1 * static_cast<double>(state.iterations()), benchmark::Counter::kIsRate);
  state.SetLabel(std::string(pon::ToString(mode)));
}
BENCHMARK(BM_DefaultScenario)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
