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

#ifndef CTIPON_HARNESS_SCENARIO_HPP_
#define CTIPON_HARNESS_SCENARIO_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ctipon/cti/report.hpp"
#include "ctipon/pon/config.hpp"
#include "ctipon/pon/dba.hpp"
#include "ctipon/pon/onu.hpp"
#include "ctipon/ran/traffic.hpp"
#include "ctipon/ran/types.hpp"

namespace ctipon::harness {

using sim::SimTime;

enum class BackgroundKind { kNone, kPoisson, kConstant };

std::string_view ToString(BackgroundKind k);

struct BackgroundProfile {
  BackgroundKind kind = BackgroundKind::kNone;
  double rate_bps = 0.0;
  std::uint32_t packet_bytes = 1500;
};

struct OnuSpec {
  OnuId id = 0;
  double fiber_km = 10.0;
};

struct TcontSpec {
  TcontId id = 0;
  OnuId onu = 0;
  pon::TrafficClass cls = pon::TrafficClass::kFronthaul;
  BackgroundProfile traffic;  // background TCONTs only
};

struct UeSpec {
  UeId id = 0;
  TcontId tcont = 0;
  int mcs = 9;
  ran::UeTrafficProfile profile;
};

struct CtiOptions {
  double drop_rate = 0.0;
  bool heartbeat = false;
  // DU clock error applied to every reported arrival window.
  SimTime du_clock_offset = 0;
};

struct LiveOptions {
  std::uint16_t port = 7878;
  double pace = 1.0;  // sim seconds per wall second; 0 runs unpaced
  std::uint16_t cti_udp_port = 0;  // 0 disables the raw CTI mirror
};

struct ScenarioConfig {
  std::string name = "unnamed";
  SimTime duration = 2 * sim::kSecond;
  std::uint64_t seed = 1;
  pon::DbaMode mode = pon::DbaMode::kCooperative;
  ran::SlotConfig slot;
  ran::FronthaulFormat fronthaul;
  pon::PonConfig pon;
  cti::CtiTiming cti;
  CtiOptions cti_options;
  SimTime telemetry_window = 100 * sim::kMillisecond;
  LiveOptions live;
  std::vector<OnuSpec> onus;
  std::vector<TcontSpec> tconts;
  std::vector<UeSpec> ues;

  TcontSpec const* FindTcont(TcontId id) const;
  OnuSpec const* FindOnu(OnuId id) const;
};

/// Every problem found while loading, each prefixed with the offending field
/// path (for example "ues[0].tcont").
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  std::vector<std::string> const& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// "125us", "1.5ms", "2s", "40ns" or a bare integer (nanoseconds).
SimTime ParseDuration(std::string_view text);  // throws std::invalid_argument
std::string FormatDuration(SimTime t);

ScenarioConfig ParseScenario(std::string_view yaml_text);  // throws ConfigError
ScenarioConfig LoadScenario(std::string const& path);      // throws ConfigError

/// Returns all validation errors (empty when valid).
std::vector<std::string> ValidateScenario(ScenarioConfig const& cfg);

/// Fully resolved config as canonical JSON; the scenario hash is FNV-1a of
/// this text.
std::string CanonicalJson(ScenarioConfig const& cfg);
std::string ScenarioHash(ScenarioConfig const& cfg);

/// Annotated YAML listing every key with its default.
std::string ExplainConfig();

}  // namespace ctipon::harness

#endif  // CTIPON_HARNESS_SCENARIO_HPP_
