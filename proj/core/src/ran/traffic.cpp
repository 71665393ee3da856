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

#include "ctipon/ran/traffic.hpp"

#include <cmath>
#include <string>

namespace ctipon::ran {

std::string_view ToString(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::kConstantRate: return "constant-rate";
    case ProfileKind::kOnOff: return "on-off";
    case ProfileKind::kVideoLike: return "video-like";
  }
  return "unknown";
}

ProfileKind ParseProfileKind(std::string_view s) {
  if (s == "constant-rate" || s == "constant") return ProfileKind::kConstantRate;
  if (s == "on-off") return ProfileKind::kOnOff;
  if (s == "video-like" || s == "video") return ProfileKind::kVideoLike;
  throw std::invalid_argument("unknown traffic profile kind '" + std::string(s) + "'");
}

void UeTrafficProfile::Validate() const {
  if (!(mean_rate_bps >= 0.0)) throw std::invalid_argument("mean_rate must be >= 0");
  if (!(scale >= 0.0)) throw std::invalid_argument("scale must be >= 0");
  if (kind == ProfileKind::kOnOff && (on_duration <= 0 || off_duration < 0)) {
    throw std::invalid_argument("on-off profile needs on > 0 and off >= 0");
  }
  if (kind == ProfileKind::kVideoLike && !(frames_per_second > 0.0)) {
    throw std::invalid_argument("video-like profile needs fps > 0");
  }
  if (kind == ProfileKind::kVideoLike && !(frame_size_sigma >= 0.0)) {
    throw std::invalid_argument("video-like profile needs sigma >= 0");
  }
}

UeState::UeState(UeId ue_id, TcontId tcont_id, int mcs_index, UeTrafficProfile p,
                 std::uint64_t seed)
    : id(ue_id),
      tcont(tcont_id),
      mcs(mcs_index),
      profile(p),
      rng(seed, "ue/" + std::to_string(ue_id)) {}

namespace {

std::uint64_t TakeWhole(UeState& ue, double bytes) {
  ue.carry_bytes += bytes;
  double whole = std::floor(ue.carry_bytes);
  ue.carry_bytes -= whole;
  return static_cast<std::uint64_t>(whole);
}

std::uint64_t VideoArrivals(UeState& ue, SimTime slot_begin, SimTime slot_end) {
  UeTrafficProfile const& p = ue.profile;
  double const mean_frame = p.mean_rate_bps / p.frames_per_second / 8.0;
  double const sigma = p.frame_size_sigma;
  std::uint64_t added = 0;
  for (;;) {
    auto at = static_cast<SimTime>(std::floor(static_cast<double>(ue.next_video_frame) *
                                              static_cast<double>(sim::kSecond) /
                                              p.frames_per_second));
    if (at >= slot_end) break;
    ++ue.next_video_frame;
    if (at < slot_begin) continue;
    // Draw even when scale is 0 so the stream stays aligned with unscaled runs.
    double z = ue.rng.Normal();
    double size = mean_frame * std::exp(sigma * z - 0.5 * sigma * sigma);
    added += TakeWhole(ue, size * p.scale);
  }
  return added;
}

}  // namespace

std::uint64_t GenTraffic(UeState& ue, std::int64_t slot_index, SimTime slot_duration) {
  UeTrafficProfile const& p = ue.profile;
  SimTime const begin = slot_index * slot_duration;
  SimTime const end = begin + slot_duration;
  double const slot_s = static_cast<double>(slot_duration) / static_cast<double>(sim::kSecond);

  std::uint64_t added = 0;
  switch (p.kind) {
    case ProfileKind::kConstantRate:
      added = TakeWhole(ue, p.mean_rate_bps * slot_s / 8.0 * p.scale);
      break;
    case ProfileKind::kOnOff: {
      SimTime cycle = p.on_duration + p.off_duration;
      if (begin % cycle < p.on_duration) {
        double peak = p.mean_rate_bps * static_cast<double>(cycle) /
                      static_cast<double>(p.on_duration);
        added = TakeWhole(ue, peak * slot_s / 8.0 * p.scale);
      }
      break;
    }
    case ProfileKind::kVideoLike:
      added = VideoArrivals(ue, begin, end);
      break;
  }
  ue.buffer_bytes += added;
  ue.generated_bytes += added;
  return added;
}

void Transmit(UeState& ue, UplinkGrant const& grant) {
  ue.buffer_bytes -= grant.payload_bytes;
  ue.reserved_bytes -= grant.payload_bytes;
  ue.transmitted_bytes += grant.payload_bytes;
  ue.padding_bytes += grant.tbs_bytes - grant.payload_bytes;
}

}  // namespace ctipon::ran
