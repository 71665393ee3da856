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

#include "ctipon/pon/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctipon::pon {

SimTime PropagationDelay(double fiber_km) {
  return static_cast<SimTime>(std::llround(fiber_km * static_cast<double>(kPropagationPerKm)));
}

std::uint64_t PonConfig::capacity_bytes() const {
  return upstream_rate_bps * static_cast<std::uint64_t>(frame_duration) /
         (8ULL * static_cast<std::uint64_t>(sim::kSecond));
}

std::uint32_t PonConfig::usable_bytes() const {
  return static_cast<std::uint32_t>(
      std::floor(static_cast<double>(capacity_bytes()) * efficiency));
}

std::uint64_t PonConfig::poll_frames() const {
  auto n = static_cast<std::uint64_t>(sr_poll_interval / frame_duration);
  return n == 0 ? 1 : n;
}

SimTime PonConfig::OffsetTimeFloor(std::uint64_t offset) const {
  return static_cast<SimTime>(offset * static_cast<std::uint64_t>(frame_duration) /
                              usable_bytes());
}

SimTime PonConfig::OffsetTimeCeil(std::uint64_t offset) const {
  return static_cast<SimTime>(
      sim::CeilDiv(offset * static_cast<std::uint64_t>(frame_duration), usable_bytes()));
}

std::uint64_t PonConfig::OffsetAtOrAfter(SimTime rel) const {
  if (rel <= 0) return 0;
  return sim::CeilDiv(static_cast<std::uint64_t>(rel) * usable_bytes(),
                      static_cast<std::uint64_t>(frame_duration));
}

SimTime PonConfig::SerializationTime(std::uint64_t bytes) const {
  return static_cast<SimTime>(
      sim::CeilDiv(bytes * 8ULL * static_cast<std::uint64_t>(sim::kSecond), upstream_rate_bps));
}

void PonConfig::Validate(SimTime max_propagation) const {
  if (frame_duration <= 0) throw std::invalid_argument("frame_duration must be > 0");
  if (upstream_rate_bps == 0) throw std::invalid_argument("upstream_rate must be > 0");
  if ((upstream_rate_bps * static_cast<std::uint64_t>(frame_duration)) %
          (8ULL * static_cast<std::uint64_t>(sim::kSecond)) != 0) {
    throw std::invalid_argument("upstream_rate * frame_duration / 8 must be a whole byte count");
  }
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("efficiency must be in (0, 1]");
  }
  if (static_cast<std::uint64_t>(burst_overhead_bytes) + guard_bytes + kGrantGranularity >
      usable_bytes()) {
    throw std::invalid_argument("burst overhead and guard leave no room for a grant");
  }
  if (sr_poll_interval < frame_duration) {
    throw std::invalid_argument("sr_poll_interval must be >= frame_duration");
  }
  if (olt_processing < 0) throw std::invalid_argument("olt_processing must be >= 0");
  if (olt_processing + max_propagation > frame_duration) {
    throw std::invalid_argument(
        "olt_processing + downstream propagation must fit within one frame");
  }
  if (queue_limit_bytes == 0) throw std::invalid_argument("queue_limit must be > 0");
}

}  // namespace ctipon::pon
