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

#ifndef CTIPON_RAN_TRAFFIC_HPP_
#define CTIPON_RAN_TRAFFIC_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "ctipon/ran/types.hpp"
#include "ctipon/sim/rng.hpp"

namespace ctipon::ran {

enum class ProfileKind { kConstantRate, kOnOff, kVideoLike };

std::string_view ToString(ProfileKind kind);
ProfileKind ParseProfileKind(std::string_view s);  // throws std::invalid_argument

struct UeTrafficProfile {
  ProfileKind kind = ProfileKind::kConstantRate;
  double mean_rate_bps = 0.0;
  // on-off: periodic on/off phases; the peak rate during "on" preserves the
  // mean rate over a full cycle.
  SimTime on_duration = 10 * sim::kMillisecond;
  SimTime off_duration = 10 * sim::kMillisecond;
  // video-like: one frame every 1/fps seconds, lognormal frame sizes with
  // shape sigma and mean mean_rate_bps / fps / 8 bytes.
  double frames_per_second = 30.0;
  double frame_size_sigma = 0.4;
  // Live-steering multiplier.
  double scale = 1.0;

  void Validate() const;
};

struct UeState {
  UeId id = 0;
  TcontId tcont = 0;
  int mcs = 0;
  UeTrafficProfile profile;
  sim::RngStream rng;

  std::uint64_t buffer_bytes = 0;
  // Bytes already covered by grants whose tx_slot has not come yet.
  std::uint64_t reserved_bytes = 0;

  std::uint64_t generated_bytes = 0;
  std::uint64_t transmitted_bytes = 0;
  std::uint64_t padding_bytes = 0;

  double carry_bytes = 0.0;
  std::int64_t next_video_frame = 0;

  UeState(UeId ue_id, TcontId tcont_id, int mcs_index, UeTrafficProfile p, std::uint64_t seed);

  std::uint64_t unreserved_bytes() const { return buffer_bytes - reserved_bytes; }
};

/// Adds this slot's arrivals to the UE buffer and returns the byte count.
std::uint64_t GenTraffic(UeState& ue, std::int64_t slot_index, SimTime slot_duration);

/// Debits the buffer for a grant at its tx_slot.
void Transmit(UeState& ue, UplinkGrant const& grant);

}  // namespace ctipon::ran

#endif  // CTIPON_RAN_TRAFFIC_HPP_
