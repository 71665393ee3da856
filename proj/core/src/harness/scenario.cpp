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

#include "ctipon/harness/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include "ctipon/ran/scheduler.hpp"
#include "ctipon/util/hash.hpp"

namespace ctipon::harness {
namespace {

std::string Join(std::vector<std::string> const& errors) {
  std::string out = "invalid scenario:";
  for (auto const& e : errors) out += "\n  " + e;
  return out;
}

// Walks one YAML mapping, converting fields and recording every problem
// instead of stopping at the first.
class Reader {
 public:
  Reader(YAML::Node node, std::string path, std::vector<std::string>& errors)
      : node_(std::move(node)), path_(std::move(path)), errors_(errors) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      Error(path_, "expected a mapping");
      node_ = YAML::Node(YAML::NodeType::Undefined);
    }
  }

  ~Reader() {
    if (!node_ || !node_.IsMap()) return;
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      auto key = it->first.as<std::string>("");
      if (!seen_.contains(key)) Error(Child(key), "unknown key");
    }
  }

  Reader(Reader const&) = delete;
  Reader& operator=(Reader const&) = delete;

  YAML::Node Get(std::string const& key) {
    seen_.insert(key);
    if (!node_ || !node_.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
    return node_[key];
  }

  std::string Child(std::string const& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void Error(std::string const& where, std::string const& what) {
    errors_.push_back(where + ": " + what);
  }

  template <typename T>
  void Scalar(std::string const& key, T& out) {
    YAML::Node n = Get(key);
    if (!n) return;
    try {
      if constexpr (std::is_same_v<T, std::uint8_t>) {
        out = static_cast<std::uint8_t>(n.as<unsigned>());
      } else {
        out = n.as<T>();
      }
      if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
        if (n.Scalar().starts_with("-")) throw YAML::Exception(n.Mark(), "negative");
      }
    } catch (YAML::Exception const&) {
      Error(Child(key), "cannot parse '" + n.as<std::string>("?") + "'");
    }
  }

  void Count(std::string const& key, std::uint64_t& out) {
    YAML::Node n = Get(key);
    if (!n) return;
    try {
      double v = n.as<double>();
      if (!(v >= 0) || v != std::floor(v) || v > 1.8e19) throw std::invalid_argument("");
      out = static_cast<std::uint64_t>(v);
    } catch (std::exception const&) {
      Error(Child(key), "expected a non-negative integer, got '" + n.as<std::string>("?") + "'");
    }
  }

  void Duration(std::string const& key, SimTime& out) {
    YAML::Node n = Get(key);
    if (!n) return;
    try {
      out = ParseDuration(n.as<std::string>());
    } catch (std::exception const& e) {
      Error(Child(key), e.what());
    }
  }

  template <typename F>
  void Enum(std::string const& key, F parse) {
    YAML::Node n = Get(key);
    if (!n) return;
    try {
      parse(n.as<std::string>());
    } catch (std::exception const& e) {
      Error(Child(key), e.what());
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

template <typename Int>
void Narrow(Reader& r, std::string const& key, Int& out) {
  std::uint64_t v = out;
  r.Count(key, v);
  if (v > std::numeric_limits<Int>::max()) {
    r.Error(r.Child(key), "out of range");
    return;
  }
  out = static_cast<Int>(v);
}

BackgroundKind ParseBackgroundKind(std::string const& s) {
  if (s == "none") return BackgroundKind::kNone;
  if (s == "poisson") return BackgroundKind::kPoisson;
  if (s == "constant") return BackgroundKind::kConstant;
  throw std::invalid_argument("unknown background profile '" + s + "'");
}

pon::TrafficClass ParseClass(std::string const& s) {
  if (s == "fronthaul") return pon::TrafficClass::kFronthaul;
  if (s == "background") return pon::TrafficClass::kBackground;
  throw std::invalid_argument("unknown class '" + s + "' (fronthaul|background)");
}

std::vector<YAML::Node> Sequence(YAML::Node const& n, std::string const& path,
                                 std::vector<std::string>& errors) {
  std::vector<YAML::Node> out;
  if (!n || n.IsNull()) return out;
  if (!n.IsSequence()) {
    errors.push_back(path + ": expected a list");
    return out;
  }
  for (auto const& item : n) out.push_back(item);
  return out;
}

std::string Indexed(std::string const& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

}  // namespace

std::string_view ToString(BackgroundKind k) {
  switch (k) {
    case BackgroundKind::kNone: return "none";
    case BackgroundKind::kPoisson: return "poisson";
    case BackgroundKind::kConstant: return "constant";
  }
  return "?";
}

TcontSpec const* ScenarioConfig::FindTcont(TcontId id) const {
  for (auto const& t : tconts) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

OnuSpec const* ScenarioConfig::FindOnu(OnuId id) const {
  for (auto const& o : onus) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(Join(errors)), errors_(std::move(errors)) {}

SimTime ParseDuration(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::size_t split = 0;
  while (split < s.size() && (std::isdigit(static_cast<unsigned char>(s[split])) ||
                              s[split] == '.' || s[split] == '-' || s[split] == '+')) {
    ++split;
  }
  std::string number(s.substr(0, split));
  std::string_view unit = s.substr(split);
  while (!unit.empty() && unit.front() == ' ') unit.remove_prefix(1);

  double scale = 0;
  if (unit.empty() || unit == "ns") {
    scale = 1;
  } else if (unit == "us") {
    scale = 1e3;
  } else if (unit == "ms") {
    scale = 1e6;
  } else if (unit == "s") {
    scale = 1e9;
  } else {
    throw std::invalid_argument("bad duration '" + std::string(text) +
                                "' (unit must be ns, us, ms or s)");
  }
  double value = 0;
  auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (number.empty() || ec != std::errc() || ptr != number.data() + number.size() ||
      !std::isfinite(value)) {
    throw std::invalid_argument("bad duration '" + std::string(text) + "'");
  }
  double ns = value * scale;
  if (std::abs(ns - std::round(ns)) > 1e-6 * std::max(1.0, std::abs(ns))) {
    throw std::invalid_argument("duration '" + std::string(text) +
                                "' is not a whole number of nanoseconds");
  }
  if (std::abs(ns) > 9.2e18) throw std::invalid_argument("duration out of range");
  return static_cast<SimTime>(std::llround(ns));
}

std::string FormatDuration(SimTime t) {
  struct Unit {
    SimTime ns;
    char const* suffix;
  };
  for (Unit u : {Unit{sim::kSecond, "s"}, Unit{sim::kMillisecond, "ms"},
                 Unit{sim::kMicrosecond, "us"}}) {
    if (t != 0 && t % u.ns == 0) return std::to_string(t / u.ns) + u.suffix;
  }
  return std::to_string(t) + "ns";
}

ScenarioConfig ParseScenario(std::string_view yaml_text) {
  std::vector<std::string> errors;
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (YAML::Exception const& e) {
    throw ConfigError({std::string("parse error: ") + e.what()});
  }
  if (!root || root.IsNull()) throw ConfigError({"scenario is empty"});

  ScenarioConfig cfg;
  {
    Reader top(root, "", errors);
    top.Scalar("name", cfg.name);
    top.Duration("duration", cfg.duration);
    top.Count("seed", cfg.seed);
    top.Enum("mode", [&](std::string const& s) { cfg.mode = pon::ParseDbaMode(s); });

    {
      Reader r(top.Get("slot"), "slot", errors);
      r.Duration("duration", cfg.slot.slot_duration);
      r.Scalar("prbs_total", cfg.slot.prbs_total);
      r.Scalar("k2", cfg.slot.k2);
      r.Duration("ru_processing_delay", cfg.slot.ru_processing_delay);
      r.Duration("du_timing_advance", cfg.slot.du_timing_advance);
      Narrow(r, "control_bytes_per_slot", cfg.slot.control_bytes_per_slot);
    }
    {
      Reader r(top.Get("fronthaul"), "fronthaul", errors);
      r.Scalar("iq_bitwidth", cfg.fronthaul.iq_bitwidth);
      Narrow(r, "per_symbol_overhead", cfg.fronthaul.per_symbol_overhead);
    }
    {
      Reader r(top.Get("pon"), "pon", errors);
      r.Duration("frame_duration", cfg.pon.frame_duration);
      r.Count("upstream_rate_bps", cfg.pon.upstream_rate_bps);
      Narrow(r, "guard_bytes", cfg.pon.guard_bytes);
      Narrow(r, "burst_overhead_bytes", cfg.pon.burst_overhead_bytes);
      r.Duration("sr_poll_interval", cfg.pon.sr_poll_interval);
      r.Duration("olt_processing", cfg.pon.olt_processing);
      Narrow(r, "fragment_header_bytes", cfg.pon.fragment_header_bytes);
      r.Count("queue_limit_bytes", cfg.pon.queue_limit_bytes);
      r.Scalar("efficiency", cfg.pon.efficiency);
    }
    {
      Reader r(top.Get("cti"), "cti", errors);
      r.Duration("lead_time", cfg.cti.lead_time);
      r.Duration("transport_delay", cfg.cti.transport_delay);
      r.Duration("jitter_margin", cfg.cti.jitter_margin);
      r.Scalar("drop_rate", cfg.cti_options.drop_rate);
      r.Scalar("heartbeat", cfg.cti_options.heartbeat);
      r.Duration("du_clock_offset", cfg.cti_options.du_clock_offset);
    }
    {
      Reader r(top.Get("telemetry"), "telemetry", errors);
      r.Duration("window", cfg.telemetry_window);
    }
    {
      Reader r(top.Get("live"), "live", errors);
      Narrow(r, "port", cfg.live.port);
      r.Scalar("pace", cfg.live.pace);
      Narrow(r, "cti_udp_port", cfg.live.cti_udp_port);
    }

    auto onus = Sequence(top.Get("onus"), "onus", errors);
    for (std::size_t i = 0; i < onus.size(); ++i) {
      Reader r(onus[i], Indexed("onus", i), errors);
      OnuSpec o;
      Narrow(r, "id", o.id);
      r.Scalar("fiber_km", o.fiber_km);
      cfg.onus.push_back(o);
    }

    auto tconts = Sequence(top.Get("tconts"), "tconts", errors);
    for (std::size_t i = 0; i < tconts.size(); ++i) {
      Reader r(tconts[i], Indexed("tconts", i), errors);
      TcontSpec t;
      Narrow(r, "id", t.id);
      Narrow(r, "onu", t.onu);
      r.Enum("class", [&](std::string const& s) { t.cls = ParseClass(s); });
      Reader tr(r.Get("traffic"), r.Child("traffic"), errors);
      tr.Enum("profile", [&](std::string const& s) { t.traffic.kind = ParseBackgroundKind(s); });
      tr.Scalar("rate_bps", t.traffic.rate_bps);
      Narrow(tr, "packet_bytes", t.traffic.packet_bytes);
      cfg.tconts.push_back(t);
    }

    auto ues = Sequence(top.Get("ues"), "ues", errors);
    for (std::size_t i = 0; i < ues.size(); ++i) {
      Reader r(ues[i], Indexed("ues", i), errors);
      UeSpec u;
      Narrow(r, "id", u.id);
      Narrow(r, "tcont", u.tcont);
      r.Scalar("mcs", u.mcs);
      r.Enum("profile", [&](std::string const& s) { u.profile.kind = ran::ParseProfileKind(s); });
      r.Scalar("mean_rate_bps", u.profile.mean_rate_bps);
      r.Duration("on_duration", u.profile.on_duration);
      r.Duration("off_duration", u.profile.off_duration);
      r.Scalar("frames_per_second", u.profile.frames_per_second);
      r.Scalar("frame_size_sigma", u.profile.frame_size_sigma);
      r.Scalar("scale", u.profile.scale);
      cfg.ues.push_back(u);
    }
  }

  if (errors.empty()) errors = ValidateScenario(cfg);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

ScenarioConfig LoadScenario(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({path + ": cannot open file"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseScenario(ss.str());
}

std::vector<std::string> ValidateScenario(ScenarioConfig const& cfg) {
  std::vector<std::string> errors;
  auto check = [&](std::string const& where, auto&& fn) {
    try {
      fn();
    } catch (std::exception const& e) {
      errors.push_back(where + ": " + e.what());
    }
  };

  if (cfg.duration <= 0) errors.push_back("duration: must be > 0");
  check("slot", [&] { cfg.slot.Validate(); });
  check("fronthaul", [&] { cfg.fronthaul.Validate(); });
  check("cti", [&] { cfg.cti.Validate(); });
  if (!(cfg.cti_options.drop_rate >= 0.0 && cfg.cti_options.drop_rate <= 1.0)) {
    errors.push_back("cti.drop_rate: must be in [0, 1]");
  }
  if (cfg.telemetry_window <= 0) errors.push_back("telemetry.window: must be > 0");
  if (!(cfg.live.pace >= 0.0)) errors.push_back("live.pace: must be >= 0");

  SimTime max_prop = 0;
  std::set<OnuId> onu_ids;
  if (cfg.onus.empty()) errors.push_back("onus: at least one ONU is required");
  for (std::size_t i = 0; i < cfg.onus.size(); ++i) {
    auto const& o = cfg.onus[i];
    if (!onu_ids.insert(o.id).second) {
      errors.push_back(Indexed("onus", i) + ".id: duplicate onu id " + std::to_string(o.id));
    }
    if (!(o.fiber_km >= 0.0 && o.fiber_km <= 60.0)) {
      errors.push_back(Indexed("onus", i) + ".fiber_km: must be in [0, 60]");
    } else {
      max_prop = std::max(max_prop, pon::PropagationDelay(o.fiber_km));
    }
  }
  check("pon", [&] { cfg.pon.Validate(max_prop); });

  std::set<TcontId> tcont_ids;
  for (std::size_t i = 0; i < cfg.tconts.size(); ++i) {
    auto const& t = cfg.tconts[i];
    std::string const base = Indexed("tconts", i);
    if (!tcont_ids.insert(t.id).second) {
      errors.push_back(base + ".id: duplicate tcont_id " + std::to_string(t.id));
    }
    if (!onu_ids.contains(t.onu)) {
      errors.push_back(base + ".onu: unknown onu " + std::to_string(t.onu));
    }
    if (t.cls == pon::TrafficClass::kFronthaul && t.traffic.kind != BackgroundKind::kNone) {
      errors.push_back(base + ".traffic: only background TCONTs carry a traffic profile");
    }
    if (t.traffic.kind != BackgroundKind::kNone) {
      if (!(t.traffic.rate_bps > 0.0)) errors.push_back(base + ".traffic.rate_bps: must be > 0");
      if (t.traffic.packet_bytes == 0 || t.traffic.packet_bytes > 65535) {
        errors.push_back(base + ".traffic.packet_bytes: must be in [1, 65535]");
      }
    }
  }

  std::set<UeId> ue_ids;
  for (std::size_t i = 0; i < cfg.ues.size(); ++i) {
    auto const& u = cfg.ues[i];
    std::string const base = Indexed("ues", i);
    if (!ue_ids.insert(u.id).second) {
      errors.push_back(base + ".id: duplicate ue id " + std::to_string(u.id));
    }
    TcontSpec const* t = cfg.FindTcont(u.tcont);
    if (t == nullptr) {
      errors.push_back(base + ".tcont: unknown tcont " + std::to_string(u.tcont));
    } else if (t->cls != pon::TrafficClass::kFronthaul) {
      errors.push_back(base + ".tcont: tcont " + std::to_string(u.tcont) + " is not fronthaul");
    }
    if (u.mcs < 0 || u.mcs >= ran::McsTableSize()) {
      errors.push_back(base + ".mcs: must be in [0, " + std::to_string(ran::McsTableSize() - 1) +
                       "]");
    }
    check(base, [&] { u.profile.Validate(); });
  }

  // The fronthaul burst of a grant must land after the slot that issued it.
  SimTime lead = static_cast<SimTime>(cfg.slot.k2 + 1) * cfg.slot.slot_duration +
                 cfg.slot.ru_processing_delay - cfg.slot.du_timing_advance;
  if (cfg.slot.slot_duration > 0 && lead <= 0) {
    errors.push_back("slot.du_timing_advance: fronthaul would arrive before its grant slot");
  }
  return errors;
}

std::string CanonicalJson(ScenarioConfig const& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["duration_ns"] = c.duration;
  j["seed"] = c.seed;
  j["mode"] = pon::ToString(c.mode);
  j["slot"] = {{"duration_ns", c.slot.slot_duration},
               {"prbs_total", c.slot.prbs_total},
               {"k2", c.slot.k2},
               {"ru_processing_delay_ns", c.slot.ru_processing_delay},
               {"du_timing_advance_ns", c.slot.du_timing_advance},
               {"control_bytes_per_slot", c.slot.control_bytes_per_slot}};
  j["fronthaul"] = {{"iq_bitwidth", c.fronthaul.iq_bitwidth},
                    {"per_symbol_overhead", c.fronthaul.per_symbol_overhead}};
  j["pon"] = {{"frame_duration_ns", c.pon.frame_duration},
              {"upstream_rate_bps", c.pon.upstream_rate_bps},
              {"guard_bytes", c.pon.guard_bytes},
              {"burst_overhead_bytes", c.pon.burst_overhead_bytes},
              {"sr_poll_interval_ns", c.pon.sr_poll_interval},
              {"olt_processing_ns", c.pon.olt_processing},
              {"fragment_header_bytes", c.pon.fragment_header_bytes},
              {"queue_limit_bytes", c.pon.queue_limit_bytes},
              {"efficiency", c.pon.efficiency}};
  j["cti"] = {{"lead_time_ns", c.cti.lead_time},
              {"transport_delay_ns", c.cti.transport_delay},
              {"jitter_margin_ns", c.cti.jitter_margin},
              {"drop_rate", c.cti_options.drop_rate},
              {"heartbeat", c.cti_options.heartbeat},
              {"du_clock_offset_ns", c.cti_options.du_clock_offset}};
  j["telemetry"] = {{"window_ns", c.telemetry_window}};
  auto onus = nlohmann::ordered_json::array();
  for (auto const& o : c.onus) onus.push_back({{"id", o.id}, {"fiber_km", o.fiber_km}});
  j["onus"] = std::move(onus);
  auto tconts = nlohmann::ordered_json::array();
  for (auto const& t : c.tconts) {
    tconts.push_back({{"id", t.id},
                      {"onu", t.onu},
                      {"class", pon::ToString(t.cls)},
                      {"traffic",
                       {{"profile", ToString(t.traffic.kind)},
                        {"rate_bps", t.traffic.rate_bps},
                        {"packet_bytes", t.traffic.packet_bytes}}}});
  }
  j["tconts"] = std::move(tconts);
  auto ues = nlohmann::ordered_json::array();
  for (auto const& u : c.ues) {
    ues.push_back({{"id", u.id},
                   {"tcont", u.tcont},
                   {"mcs", u.mcs},
                   {"profile", ran::ToString(u.profile.kind)},
                   {"mean_rate_bps", u.profile.mean_rate_bps},
                   {"on_duration_ns", u.profile.on_duration},
                   {"off_duration_ns", u.profile.off_duration},
                   {"frames_per_second", u.profile.frames_per_second},
                   {"frame_size_sigma", u.profile.frame_size_sigma},
                   {"scale", u.profile.scale}});
  }
  j["ues"] = std::move(ues);
  // Live-mode flags do not change simulated behaviour and stay out of the hash.
  return j.dump();
}

std::string ScenarioHash(ScenarioConfig const& cfg) {
  return util::ToHex(util::HashString(CanonicalJson(cfg)));
}

std::string ExplainConfig() {
  ScenarioConfig d;
  UeSpec u;
  std::ostringstream o;
  auto dur = [](SimTime t) { return FormatDuration(t); };
  o << "# Scenario file reference. Every key is optional unless marked required;\n"
       "# the value shown is the default. Durations take ns, us, ms or s.\n"
    << "name: " << d.name << "\n"
    << "duration: " << dur(d.duration) << "          # simulated time\n"
    << "seed: " << d.seed << "                # drives every random stream\n"
    << "mode: " << pon::ToString(d.mode) << "              # initial DBA: cti | sr\n"
    << "slot:\n"
    << "  duration: " << dur(d.slot.slot_duration) << "\n"
    << "  prbs_total: " << d.slot.prbs_total << "        # PRBs per cell (one cell per fronthaul TCONT)\n"
    << "  k2: " << d.slot.k2 << "                 # slots from grant to UE transmission\n"
    << "  ru_processing_delay: " << dur(d.slot.ru_processing_delay) << "\n"
    << "  du_timing_advance: " << dur(d.slot.du_timing_advance) << "\n"
    << "  control_bytes_per_slot: " << d.slot.control_bytes_per_slot
    << "  # periodic fronthaul load per fronthaul TCONT\n"
    << "fronthaul:\n"
    << "  iq_bitwidth: " << d.fronthaul.iq_bitwidth << "\n"
    << "  per_symbol_overhead: " << d.fronthaul.per_symbol_overhead << "  # bytes per symbol\n"
    << "pon:\n"
    << "  frame_duration: " << dur(d.pon.frame_duration) << "\n"
    << "  upstream_rate_bps: " << d.pon.upstream_rate_bps << "\n"
    << "  guard_bytes: " << d.pon.guard_bytes << "\n"
    << "  burst_overhead_bytes: " << d.pon.burst_overhead_bytes << "\n"
    << "  sr_poll_interval: " << dur(d.pon.sr_poll_interval) << "\n"
    << "  olt_processing: " << dur(d.pon.olt_processing) << "\n"
    << "  fragment_header_bytes: " << d.pon.fragment_header_bytes << "\n"
    << "  queue_limit_bytes: " << d.pon.queue_limit_bytes << "\n"
    << "  efficiency: " << d.pon.efficiency << "\n"
    << "cti:\n"
    << "  lead_time: " << dur(d.cti.lead_time) << "\n"
    << "  transport_delay: " << dur(d.cti.transport_delay) << "\n"
    << "  jitter_margin: " << dur(d.cti.jitter_margin) << "\n"
    << "  drop_rate: " << d.cti_options.drop_rate << "       # fraction of reports lost in transit\n"
    << "  heartbeat: " << (d.cti_options.heartbeat ? "true" : "false")
    << "     # send empty reports too\n"
    << "  du_clock_offset: " << dur(d.cti_options.du_clock_offset)
    << "  # added to reported arrival windows\n"
    << "telemetry:\n"
    << "  window: " << dur(d.telemetry_window) << "\n"
    << "live:\n"
    << "  port: " << d.live.port << "\n"
    << "  pace: " << d.live.pace << "          # sim seconds per wall second, 0 = unpaced\n"
    << "  cti_udp_port: " << d.live.cti_udp_port << "     # mirror encoded CTI reports over UDP, 0 = off\n"
    << "onus:                # required, at least one\n"
    << "  - id: 1            # required\n"
    << "    fiber_km: " << OnuSpec{}.fiber_km << "\n"
    << "tconts:\n"
    << "  - id: 1            # required, unique\n"
    << "    onu: 1           # required\n"
    << "    class: fronthaul # fronthaul | background\n"
    << "    traffic:         # background TCONTs only\n"
    << "      profile: none  # none | poisson | constant\n"
    << "      rate_bps: 0\n"
    << "      packet_bytes: " << BackgroundProfile{}.packet_bytes << "\n"
    << "ues:\n"
    << "  - id: 1            # required, unique\n"
    << "    tcont: 1         # required, a fronthaul TCONT\n"
    << "    mcs: " << u.mcs << "             # index into the MCS table, 0-" << ran::McsTableSize() - 1
    << "\n"
    << "    profile: " << ran::ToString(u.profile.kind) << "  # constant-rate | on-off | video-like\n"
    << "    mean_rate_bps: 0\n"
    << "    on_duration: " << dur(u.profile.on_duration) << "\n"
    << "    off_duration: " << dur(u.profile.off_duration) << "\n"
    << "    frames_per_second: " << u.profile.frames_per_second << "\n"
    << "    frame_size_sigma: " << u.profile.frame_size_sigma << "\n"
    << "    scale: " << u.profile.scale << "\n";
  return o.str();
}

}  // namespace ctipon::harness
