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

#ifndef CTIPON_HARNESS_SIMULATION_HPP_
#define CTIPON_HARNESS_SIMULATION_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctipon/cti/report.hpp"
#include "ctipon/harness/scenario.hpp"
#include "ctipon/pon/bwmap.hpp"
#include "ctipon/pon/olt.hpp"
#include "ctipon/pon/onu.hpp"
#include "ctipon/ran/traffic.hpp"
#include "ctipon/sim/rng.hpp"
#include "ctipon/sim/simulator.hpp"
#include "ctipon/telemetry/metrics.hpp"

namespace ctipon::harness {

// Raised in strict mode when a computed BwMap fails validation.
class BwMapViolationError : public std::runtime_error {
 public:
  BwMapViolationError(std::uint64_t frame_index, std::string const& detail);
  std::uint64_t frame_index() const { return frame_index_; }

 private:
  std::uint64_t frame_index_;
};

struct SimulationOptions {
  bool strict = false;
  bool keep_samples = false;  // every LatencySample, fronthaul and background
  bool keep_bwmaps = false;
  std::ostream* bwmap_trace = nullptr;
  // Encoded size and decoded content of every report the DU emits (before
  // any transit loss).
  std::function<void(cti::CtiReport const&, SimTime)> on_cti;
  std::function<void(std::vector<std::uint8_t> const&)> on_cti_bytes;
  std::function<void(telemetry::MetricWindow const&)> on_window;
};

// Fronthaul burst as the DU announced it next to what actually reached the
// ONU. Used to check report truthfulness.
struct BurstRecord {
  TcontId tcont_id = 0;
  std::int64_t tx_slot = 0;
  std::uint64_t bytes = 0;
  SimTime arrival = 0;
};

struct ConservationResult {
  bool ok = true;
  std::vector<std::string> failures;
};

/// One scenario wired end to end: per-cell RAN schedulers, the DU's CTI
/// sender, the OLT's DBA, ONU queues, and telemetry.
///
/// Slot ticks run at every slot boundary, frame ticks at every PON frame
/// boundary. The map for frame f is computed at the start of frame f - 1 and
/// frame f is executed at the start of frame f + 1.
class Simulation {
 public:
  Simulation(ScenarioConfig cfg, pon::DbaMode mode, SimulationOptions opts = {});
  ~Simulation();
  Simulation(Simulation const&) = delete;
  Simulation& operator=(Simulation const&) = delete;

  SimTime now() const { return sim_.now(); }
  SimTime end() const { return cfg_.duration; }
  bool done() const { return now() >= cfg_.duration; }
  ScenarioConfig const& config() const { return cfg_; }
  pon::DbaMode mode() const { return mode_; }

  /// Advances to min(t, end()).
  void RunUntil(SimTime t);

  /// Schedules a DBA mode change at the first frame boundary strictly after
  /// now(); returns that boundary.
  SimTime RequestMode(pon::DbaMode mode);
  /// Schedules a traffic scale change for one UE (or all when ue is empty)
  /// at the first slot boundary strictly after now(); returns that boundary.
  /// Throws std::invalid_argument for an unknown UE or negative scale.
  SimTime RequestTrafficScale(std::optional<UeId> ue, double scale);

  telemetry::MetricWindow Snapshot() const { return collector_.Snapshot(); }

  /// Runs to end() if needed and returns the report. Call once.
  telemetry::RunReport Finish();

  ConservationResult CheckConservation() const;

  std::vector<pon::LatencySample> const& samples() const { return samples_; }
  std::vector<pon::BwMap> const& bwmaps() const { return bwmaps_; }
  std::vector<BurstRecord> const& announced() const { return announced_; }
  std::vector<BurstRecord> const& delivered() const { return delivered_; }
  std::uint64_t violations() const { return violations_; }
  std::uint64_t cti_sent() const { return cti_sent_; }
  std::uint64_t cti_dropped() const { return cti_dropped_; }
  std::uint64_t cti_decode_errors() const { return cti_decode_errors_; }
  std::uint64_t trace_digest() const { return sim_.trace_digest(); }
  pon::UpstreamPath const& upstream() const { return upstream_; }
  pon::Olt const& olt() const { return olt_; }
  std::vector<ran::UeState> const& ues() const { return ues_; }

 private:
  struct Cell {
    TcontId tcont = 0;
    std::vector<std::size_t> ue_index;
    std::map<std::int64_t, std::vector<ran::UplinkGrant>> in_flight;  // by tx_slot
  };

  void SlotTick(std::int64_t slot);
  void FrameTick(std::uint64_t frame);
  void ScheduleBackground(TcontSpec const& t, SimTime at);
  void DeliverCti(std::vector<std::uint8_t> const& bytes, SimTime receipt);
  void EnqueueFronthaul(TcontId tcont, std::int64_t tx_slot, std::uint64_t bytes);
  void Enqueue(TcontId tcont, pon::Packet pkt);

  ScenarioConfig cfg_;
  SimulationOptions opts_;
  pon::DbaMode mode_;
  std::optional<std::pair<SimTime, pon::DbaMode>> pending_mode_;
  std::vector<std::pair<SimTime, std::pair<std::optional<UeId>, double>>> pending_scale_;

  sim::Simulator sim_;
  std::vector<ran::UeState> ues_;
  std::vector<Cell> cells_;
  std::map<UeId, TcontId> ue_tcont_;
  cti::CtiSender sender_;
  sim::RngStream cti_drop_rng_;
  std::map<TcontId, sim::RngStream> bg_rng_;
  pon::Olt olt_;
  pon::UpstreamPath upstream_;
  telemetry::Collector collector_;
  std::map<std::uint64_t, pon::BwMap> maps_;  // computed, not yet executed

  std::uint64_t next_packet_id_ = 1;
  std::uint64_t fronthaul_samples_ = 0;
  std::uint64_t violations_ = 0;
  std::uint64_t cti_sent_ = 0;
  std::uint64_t cti_dropped_ = 0;
  std::uint64_t cti_decode_errors_ = 0;
  std::map<TcontId, std::uint64_t> offered_bytes_;  // every packet handed to a queue
  std::vector<pon::LatencySample> samples_;
  std::vector<pon::BwMap> bwmaps_;
  std::vector<BurstRecord> announced_;
  std::vector<BurstRecord> delivered_;
  std::optional<telemetry::RunReport> report_;
};

/// Batch run: builds a Simulation, runs it to the end, fills identity fields.
telemetry::RunReport RunScenario(ScenarioConfig const& cfg, pon::DbaMode mode,
                                 SimulationOptions opts = {});

/// Identity fields and per-TCONT counters; used by RunScenario and live mode.
void FillReportIdentity(telemetry::RunReport& report, Simulation const& sim);

}  // namespace ctipon::harness

#endif  // CTIPON_HARNESS_SIMULATION_HPP_
