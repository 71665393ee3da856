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

#ifndef CTIPON_HARNESS_CONTROL_HPP_
#define CTIPON_HARNESS_CONTROL_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ctipon/cti/report.hpp"
#include "ctipon/pon/dba.hpp"
#include "ctipon/telemetry/metrics.hpp"

namespace ctipon::harness {

enum class CommandKind { kSetMode, kSetTrafficScale, kPause, kResume, kReset };

struct Command {
  CommandKind kind = CommandKind::kPause;
  pon::DbaMode mode = pon::DbaMode::kCooperative;  // set_mode
  std::optional<UeId> ue;                          // set_traffic_scale; empty = all
  double scale = 1.0;
  std::optional<std::string> id;  // echoed back in the reply when present
};

class ControlError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses one line of the control protocol. Throws ControlError.
Command ParseCommand(std::string_view line);

struct Reply {
  bool ok = false;
  std::int64_t effective_at_ns = 0;
  std::string error;
  std::optional<std::string> id;
};

/// One JSON object, no trailing newline.
std::string FormatReply(Reply const& reply);

/// Telemetry frames streamed to subscribers.
std::string WindowFrame(telemetry::MetricWindow const& w, bool partial, std::uint64_t generation,
                        std::int64_t sim_time_ns, std::int64_t slip_ns);
std::string CtiFrame(cti::CtiReport const& report, std::int64_t sent_at_ns,
                     std::uint64_t generation);
std::string StatusFrame(std::string_view state, std::uint64_t generation, std::int64_t sim_time_ns,
                        std::string_view mode);

}  // namespace ctipon::harness

#endif  // CTIPON_HARNESS_CONTROL_HPP_
