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

#include "ctipon/harness/control.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace ctipon::harness {
namespace {

using Json = nlohmann::ordered_json;

}  // namespace

Command ParseCommand(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (Json::exception const&) {
    throw ControlError("malformed JSON");
  }
  if (!j.is_object()) throw ControlError("command must be a JSON object");

  Command c;
  if (j.contains("id")) {
    auto const& id = j["id"];
    if (id.is_string()) {
      c.id = id.get<std::string>();
    } else if (id.is_number_integer()) {
      c.id = std::to_string(id.get<std::int64_t>());
    } else {
      throw ControlError("id must be a string or integer");
    }
  }
  if (!j.contains("cmd") || !j["cmd"].is_string()) throw ControlError("missing cmd");
  std::string const cmd = j["cmd"].get<std::string>();

  if (cmd == "set_mode") {
    c.kind = CommandKind::kSetMode;
    if (!j.contains("mode") || !j["mode"].is_string()) throw ControlError("set_mode needs mode");
    std::string mode = j["mode"].get<std::string>();
    if (mode != "cti" && mode != "sr") throw ControlError("mode must be \"cti\" or \"sr\"");
    c.mode = pon::ParseDbaMode(mode);
  } else if (cmd == "set_traffic_scale") {
    c.kind = CommandKind::kSetTrafficScale;
    if (!j.contains("ue")) throw ControlError("set_traffic_scale needs ue");
    auto const& ue = j["ue"];
    if (ue.is_string() && ue.get<std::string>() == "all") {
      c.ue.reset();
    } else if (ue.is_number_unsigned() &&
               ue.get<std::uint64_t>() <= std::numeric_limits<UeId>::max()) {
      c.ue = static_cast<UeId>(ue.get<std::uint64_t>());
    } else {
      throw ControlError("ue must be a non-negative id or \"all\"");
    }
    if (!j.contains("scale") || !j["scale"].is_number()) {
      throw ControlError("set_traffic_scale needs a numeric scale");
    }
    c.scale = j["scale"].get<double>();
    if (!(c.scale >= 0.0) || !std::isfinite(c.scale)) throw ControlError("scale must be >= 0");
  } else if (cmd == "pause") {
    c.kind = CommandKind::kPause;
  } else if (cmd == "resume") {
    c.kind = CommandKind::kResume;
  } else if (cmd == "reset") {
    c.kind = CommandKind::kReset;
  } else {
    throw ControlError("unknown cmd \"" + cmd + "\"");
  }
  return c;
}

std::string FormatReply(Reply const& r) {
  Json j;
  if (r.id) j["id"] = *r.id;
  j["ok"] = r.ok;
  if (r.ok) {
    j["effective_at_ns"] = r.effective_at_ns;
  } else {
    j["error"] = r.error;
  }
  return j.dump();
}

std::string WindowFrame(telemetry::MetricWindow const& w, bool partial, std::uint64_t generation,
                        std::int64_t sim_time_ns, std::int64_t slip_ns) {
  Json j;
  j["type"] = "window";
  Json body = Json::parse(telemetry::WindowJson(w));
  for (auto& [k, v] : body.items()) j[k] = v;
  j["partial"] = partial;
  j["generation"] = generation;
  j["sim_time_ns"] = sim_time_ns;
  j["slip_ns"] = slip_ns;
  return j.dump();
}

std::string CtiFrame(cti::CtiReport const& report, std::int64_t sent_at_ns,
                     std::uint64_t generation) {
  Json j;
  j["type"] = "cti";
  j["seq"] = report.seq;
  j["report_time_ns"] = report.report_time;
  j["sent_at_ns"] = sent_at_ns;
  j["generation"] = generation;
  Json entries = Json::array();
  for (auto const& e : report.entries) {
    entries.push_back({{"tcont", e.tcont_id},
                       {"bytes", e.expected_bytes},
                       {"arrival_start_ns", e.arrival_start},
                       {"arrival_end_ns", e.arrival_end}});
  }
  j["entries"] = std::move(entries);
  return j.dump();
}

std::string StatusFrame(std::string_view state, std::uint64_t generation, std::int64_t sim_time_ns,
                        std::string_view mode) {
  Json j;
  j["type"] = "status";
  j["state"] = state;
  j["generation"] = generation;
  j["sim_time_ns"] = sim_time_ns;
  j["mode"] = mode;
  return j.dump();
}

}  // namespace ctipon::harness
