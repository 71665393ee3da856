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

#include "ctipon/harness/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "ctipon/cti/codec.hpp"
#include "ctipon/ran/scheduler.hpp"

namespace ctipon::harness {
namespace {

enum Component : sim::ComponentId {
  kDu = 1,
  kOlt = 2,
  kOnu = 3,
  kBackground = 4,
  kCtiLink = 5,
};

std::vector<pon::TcontInfo> TcontInfos(ScenarioConfig const& cfg) {
  std::vector<pon::TcontInfo> out;
  for (auto const& t : cfg.tconts) out.push_back({t.id, t.onu, t.cls});
  return out;
}

std::vector<pon::OnuLink> OnuLinks(ScenarioConfig const& cfg) {
  std::vector<pon::OnuLink> out;
  for (auto const& o : cfg.onus) out.push_back({o.id, pon::PropagationDelay(o.fiber_km)});
  return out;
}

telemetry::CollectorConfig CollectorFor(ScenarioConfig const& cfg) {
  telemetry::CollectorConfig c;
  c.window = cfg.telemetry_window;
  c.frame_duration = cfg.pon.frame_duration;
  c.frame_capacity_bytes = cfg.pon.capacity_bytes();
  c.seed = cfg.seed;
  c.horizon = cfg.duration;
  return c;
}

ScenarioConfig Checked(ScenarioConfig cfg) {
  auto errors = ValidateScenario(cfg);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

}  // namespace

BwMapViolationError::BwMapViolationError(std::uint64_t frame_index, std::string const& detail)
    : std::runtime_error("bwmap for frame " + std::to_string(frame_index) +
                         " failed validation: " + detail),
      frame_index_(frame_index) {}

Simulation::Simulation(ScenarioConfig cfg, pon::DbaMode mode, SimulationOptions opts)
    : cfg_(Checked(std::move(cfg))),
      opts_(std::move(opts)),
      mode_(mode),
      sender_(cfg_.cti_options.heartbeat),
      cti_drop_rng_(cfg_.seed, "cti/drop"),
      olt_(cfg_.pon, cfg_.cti, TcontInfos(cfg_), mode),
      upstream_(cfg_.pon, OnuLinks(cfg_), TcontInfos(cfg_)),
      collector_(CollectorFor(cfg_), std::string(pon::ToString(mode))) {
  // UEs grouped by cell so each cell schedules a contiguous span.
  std::vector<UeSpec> specs = cfg_.ues;
  std::sort(specs.begin(), specs.end(), [](UeSpec const& a, UeSpec const& b) {
    return std::tie(a.tcont, a.id) < std::tie(b.tcont, b.id);
  });
  ues_.reserve(specs.size());
  for (auto const& u : specs) {
    ues_.emplace_back(u.id, u.tcont, u.mcs, u.profile, cfg_.seed);
    ue_tcont_[u.id] = u.tcont;
  }
  for (auto const& t : cfg_.tconts) {
    offered_bytes_[t.id] = 0;
    if (t.cls != pon::TrafficClass::kFronthaul) continue;
    Cell c;
    c.tcont = t.id;
    for (std::size_t i = 0; i < ues_.size(); ++i) {
      if (ues_[i].tcont == t.id) c.ue_index.push_back(i);
    }
    cells_.push_back(std::move(c));
  }

  maps_[0] = pon::BwMap{0, {}};
  if (opts_.keep_bwmaps) bwmaps_.push_back(maps_[0]);
  if (opts_.bwmap_trace != nullptr) {
    *opts_.bwmap_trace << pon::kTraceHeader << '\n' << pon::FormatTrace(maps_[0]);
  }

  sim_.Schedule(0, kDu, [this] { SlotTick(0); });
  sim_.Schedule(0, kOlt, [this] { FrameTick(0); });
  for (auto const& t : cfg_.tconts) {
    if (t.traffic.kind == BackgroundKind::kNone) continue;
    bg_rng_.emplace(t.id, sim::RngStream(cfg_.seed, "bg/" + std::to_string(t.id)));
    SimTime first = 0;
    if (t.traffic.kind == BackgroundKind::kPoisson) {
      double mean_ns = t.traffic.packet_bytes * 8.0 / t.traffic.rate_bps * 1e9;
      first = static_cast<SimTime>(std::llround(bg_rng_.at(t.id).Exponential(mean_ns)));
    }
    if (first <= cfg_.duration) ScheduleBackground(t, first);
  }
}

Simulation::~Simulation() = default;

void Simulation::RunUntil(SimTime t) {
  sim_.RunUntil(std::clamp(t, sim_.now(), cfg_.duration));
}

SimTime Simulation::RequestMode(pon::DbaMode mode) {
  SimTime const frame = cfg_.pon.frame_duration;
  SimTime at = (now() / frame + 1) * frame;
  pending_mode_ = {at, mode};
  return at;
}

SimTime Simulation::RequestTrafficScale(std::optional<UeId> ue, double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("scale must be a finite value >= 0");
  }
  if (ue && !ue_tcont_.contains(*ue)) {
    throw std::invalid_argument("unknown ue " + std::to_string(*ue));
  }
  SimTime const slot = cfg_.slot.slot_duration;
  SimTime at = (now() / slot + 1) * slot;
  pending_scale_.push_back({at, {ue, scale}});
  return at;
}

void Simulation::SlotTick(std::int64_t slot) {
  SimTime const t = sim_.now();
  if (pending_mode_ && pending_mode_->first <= t) {
    mode_ = pending_mode_->second;
    olt_.set_mode(mode_);
    collector_.SetModeLabel(pending_mode_->first, std::string(pon::ToString(mode_)));
    pending_mode_.reset();
  }
  std::erase_if(pending_scale_, [&](auto const& p) {
    if (p.first > t) return false;
    for (auto& u : ues_) {
      if (!p.second.first || *p.second.first == u.id) u.profile.scale = p.second.second;
    }
    return true;
  });

  std::vector<cti::FronthaulBurst> bursts;
  for (auto& cell : cells_) {
    if (auto it = cell.in_flight.find(slot); it != cell.in_flight.end()) {
      for (auto const& g : it->second) {
        for (auto i : cell.ue_index) {
          if (ues_[i].id == g.ue_id) ran::Transmit(ues_[i], g);
        }
      }
      cell.in_flight.erase(it);
    }
  }
  for (auto& ue : ues_) ran::GenTraffic(ue, slot, cfg_.slot.slot_duration);

  std::int64_t const tx_slot = slot + cfg_.slot.k2;
  for (auto& cell : cells_) {
    std::vector<ran::UplinkGrant> grants;
    if (!cell.ue_index.empty()) {
      std::span<ran::UeState> span(&ues_[cell.ue_index.front()], cell.ue_index.size());
      grants = ran::ScheduleSlot(slot, span, cfg_.slot);
    }
    std::uint64_t bytes = cfg_.slot.control_bytes_per_slot;
    for (auto const& b : cti::BurstsForGrants(grants, cfg_.slot, cfg_.fronthaul, ue_tcont_)) {
      bytes += b.bytes;
    }
    if (bytes > 0) {
      ran::UplinkGrant probe;
      probe.grant_slot = slot;
      probe.tx_slot = tx_slot;
      SimTime arrival = ran::ArrivalTime(probe, cfg_.slot);
      bursts.push_back({cell.tcont, bytes, arrival + cfg_.cti_options.du_clock_offset});
      TcontId tcont = cell.tcont;
      sim_.Schedule(arrival, kOnu,
                    [this, tcont, tx_slot, bytes] { EnqueueFronthaul(tcont, tx_slot, bytes); });
    }
    if (!grants.empty()) cell.in_flight[tx_slot] = std::move(grants);
  }

  if (mode_ == pon::DbaMode::kCooperative) {
    cti::CtiReport draft = cti::BuildReportFromBursts(
        bursts, std::max<SimTime>(0, t + cfg_.cti_options.du_clock_offset),
        cfg_.cti.jitter_margin);
    if (auto report = sender_.Emit(std::move(draft))) {
      ++cti_sent_;
      collector_.RecordCti(t);
      for (auto const& e : report->entries) {
        announced_.push_back({e.tcont_id, tx_slot, e.expected_bytes, e.arrival_start});
      }
      auto bytes = cti::Encode(*report);
      if (opts_.on_cti) opts_.on_cti(*report, t);
      if (opts_.on_cti_bytes) opts_.on_cti_bytes(bytes);
      if (cti_drop_rng_.Bernoulli(cfg_.cti_options.drop_rate)) {
        ++cti_dropped_;
      } else {
        SimTime receipt = t + cfg_.cti.transport_delay;
        sim_.Schedule(receipt, kCtiLink,
                      [this, bytes = std::move(bytes), receipt] { DeliverCti(bytes, receipt); });
      }
    }
  }

  SimTime next = ran::SlotStart(slot + 1, cfg_.slot);
  if (next < cfg_.duration) sim_.Schedule(next, kDu, [this, slot] { SlotTick(slot + 1); });
}

void Simulation::DeliverCti(std::vector<std::uint8_t> const& bytes, SimTime receipt) {
  try {
    olt_.ReceiveCti(cti::Decode(bytes), receipt);
  } catch (cti::DecodeError const&) {
    ++cti_decode_errors_;
  }
}

void Simulation::EnqueueFronthaul(TcontId tcont, std::int64_t tx_slot, std::uint64_t bytes) {
  delivered_.push_back({tcont, tx_slot, bytes, sim_.now()});
  pon::Packet pkt;
  pkt.packet_id = next_packet_id_++;
  pkt.bytes = static_cast<std::uint32_t>(bytes);
  pkt.created_at = sim_.now();
  pkt.cls = pon::TrafficClass::kFronthaul;
  Enqueue(tcont, pkt);
}

void Simulation::Enqueue(TcontId tcont, pon::Packet pkt) {
  offered_bytes_[tcont] += pkt.bytes;
  if (!upstream_.Enqueue(tcont, pkt)) collector_.RecordDrop(pkt.created_at);
}

void Simulation::ScheduleBackground(TcontSpec const& t, SimTime at) {
  TcontId const id = t.id;
  sim_.Schedule(at, kBackground, [this, id] {
    TcontSpec const& tc = *cfg_.FindTcont(id);
    pon::Packet pkt;
    pkt.packet_id = next_packet_id_++;
    pkt.bytes = tc.traffic.packet_bytes;
    pkt.created_at = sim_.now();
    pkt.cls = pon::TrafficClass::kBackground;
    Enqueue(id, pkt);

    double const mean_ns = tc.traffic.packet_bytes * 8.0 / tc.traffic.rate_bps * 1e9;
    SimTime gap = 0;
    if (tc.traffic.kind == BackgroundKind::kPoisson) {
      gap = static_cast<SimTime>(std::llround(bg_rng_.at(id).Exponential(mean_ns)));
    } else {
      gap = static_cast<SimTime>(std::llround(mean_ns));
    }
    SimTime next = sim_.now() + std::max<SimTime>(gap, 1);
    if (next <= cfg_.duration) ScheduleBackground(tc, next);
  });
}

void Simulation::FrameTick(std::uint64_t frame) {
  SimTime const t = sim_.now();
  if (pending_mode_ && pending_mode_->first <= t) {
    mode_ = pending_mode_->second;
    olt_.set_mode(mode_);
    collector_.SetModeLabel(pending_mode_->first, std::string(pon::ToString(mode_)));
    pending_mode_.reset();
  }

  if (frame >= 1) {
    auto node = maps_.extract(frame - 1);
    pon::FrameExecution exec = upstream_.ExecuteFrame(node.mapped());
    for (auto const& s : exec.samples) {
      collector_.Record(s);
      if (s.cls == pon::TrafficClass::kFronthaul) ++fronthaul_samples_;
      if (opts_.keep_samples) samples_.push_back(s);
    }
    collector_.RecordFrame(cfg_.pon.FrameStart(frame - 1), exec.granted_bytes, exec.used_bytes,
                           exec.wasted_bytes);
    for (auto msg : exec.reports) {
      msg.available_at += cfg_.pon.olt_processing;
      olt_.ReceiveStatus(msg);
    }
  }

  pon::BwMap next = olt_.ComputeMap(frame + 1, t);
  auto problems = pon::ValidateBwMap(next, cfg_.pon);
  if (!problems.empty()) {
    ++violations_;
    if (opts_.strict) {
      throw BwMapViolationError(frame + 1, std::string(pon::ToString(problems.front().kind)) +
                                               ": " + problems.front().detail);
    }
  }
  if (opts_.keep_bwmaps) bwmaps_.push_back(next);
  if (opts_.bwmap_trace != nullptr) *opts_.bwmap_trace << pon::FormatTrace(next);
  maps_[frame + 1] = std::move(next);

  for (auto const& w : collector_.AdvanceTo(t)) {
    if (opts_.on_window) opts_.on_window(w);
  }

  SimTime next_start = cfg_.pon.FrameStart(frame + 1);
  if (next_start <= cfg_.duration) {
    sim_.Schedule(next_start, kOlt, [this, frame] { FrameTick(frame + 1); });
  }
}

telemetry::RunReport Simulation::Finish() {
  if (report_) throw std::logic_error("Simulation::Finish called twice");
  RunUntil(cfg_.duration);
  std::size_t before = collector_.closed().size();
  report_ = collector_.Finish(cfg_.duration);
  if (opts_.on_window) {
    for (std::size_t i = before; i < report_->windows.size(); ++i) opts_.on_window(report_->windows[i]);
  }
  report_->cti_dropped = cti_dropped_;
  report_->bwmap_violations = violations_;
  FillReportIdentity(*report_, *this);
  return *report_;
}

ConservationResult Simulation::CheckConservation() const {
  ConservationResult r;
  auto fail = [&](std::string s) {
    r.ok = false;
    r.failures.push_back(std::move(s));
  };
  for (auto const& [id, q] : upstream_.queues()) {
    std::uint64_t offered = offered_bytes_.at(id);
    if (q.enqueued_bytes() != offered) {
      fail("tcont " + std::to_string(id) + ": queue saw " + std::to_string(q.enqueued_bytes()) +
           " B, offered " + std::to_string(offered) + " B");
    }
    std::uint64_t accounted = q.received_bytes() + q.occupancy_bytes() + q.dropped_bytes();
    if (accounted != offered) {
      fail("tcont " + std::to_string(id) + ": received + queued + dropped = " +
           std::to_string(accounted) + " B, offered " + std::to_string(offered) + " B");
    }
  }
  for (auto const& ue : ues_) {
    if (ue.generated_bytes != ue.transmitted_bytes + ue.buffer_bytes) {
      fail("ue " + std::to_string(ue.id) + ": generated != transmitted + buffered");
    }
  }
  std::uint64_t windowed = 0;
  auto const& windows = report_ ? report_->windows : collector_.closed();
  for (auto const& w : windows) windowed += w.samples();
  if (report_) {
    if (windowed != fronthaul_samples_) {
      fail("window sample total " + std::to_string(windowed) + " != emitted " +
           std::to_string(fronthaul_samples_));
    }
    if (report_->aggregate.samples() != fronthaul_samples_) fail("aggregate sample count mismatch");
    if (report_->histogram.total() != fronthaul_samples_) fail("histogram total mismatch");
    if (report_->late_samples != 0) fail("late samples: " + std::to_string(report_->late_samples));
  }
  return r;
}

void FillReportIdentity(telemetry::RunReport& report, Simulation const& sim) {
  ScenarioConfig const& cfg = sim.config();
  report.scenario = cfg.name;
  report.scenario_hash = ScenarioHash(cfg);
  report.seed = cfg.seed;
  report.tconts.clear();
  for (auto const& [id, q] : sim.upstream().queues()) {
    telemetry::TcontCounters c;
    c.tcont_id = id;
    c.cls = std::string(pon::ToString(q.info().cls));
    c.enqueued_bytes = q.enqueued_bytes();
    c.received_bytes = q.received_bytes();
    c.queued_bytes = q.occupancy_bytes();
    c.dropped_bytes = q.dropped_bytes();
    report.tconts.push_back(c);
  }
}

telemetry::RunReport RunScenario(ScenarioConfig const& cfg, pon::DbaMode mode,
                                 SimulationOptions opts) {
  Simulation sim(cfg, mode, std::move(opts));
  return sim.Finish();
}

}  // namespace ctipon::harness
