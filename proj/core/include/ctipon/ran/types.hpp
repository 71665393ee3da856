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

#ifndef CTIPON_RAN_TYPES_HPP_
#define CTIPON_RAN_TYPES_HPP_

#include <cstdint>
#include <stdexcept>

#include "ctipon/sim/time.hpp"

namespace ctipon {

using UeId = std::uint32_t;
using OnuId = std::uint32_t;
using TcontId = std::uint16_t;

}  // namespace ctipon

namespace ctipon::ran {

using sim::SimTime;

struct SlotConfig {
  SimTime slot_duration = sim::kMillisecond;
  int prbs_total = 51;
  // Slots between grant issuance and the UE's transmission.
  int k2 = 4;
  SimTime ru_processing_delay = 50 * sim::kMicrosecond;
  // Subtracted from the fronthaul arrival instant; models DU-side timing
  // adjustments applied to C/U-plane traffic.
  SimTime du_timing_advance = 0;
  // Periodic PRACH/SRS fronthaul load per fronthaul TCONT per slot.
  std::uint32_t control_bytes_per_slot = 0;

  void Validate() const;  // throws std::invalid_argument
};

// Uplink U-plane payload format for split 7.2: frequency-domain IQ for the
// granted PRBs only, plus per-symbol framing.
struct FronthaulFormat {
  int iq_bitwidth = 9;
  std::uint32_t per_symbol_overhead = 36;

  void Validate() const;
};

struct UplinkGrant {
  std::int64_t grant_slot = 0;
  std::int64_t tx_slot = 0;
  UeId ue_id = 0;
  int n_prbs = 0;
  std::uint64_t tbs_bytes = 0;
  // Buffered bytes reserved for this grant (tbs_bytes minus padding).
  std::uint64_t payload_bytes = 0;

  friend bool operator==(UplinkGrant const&, UplinkGrant const&) = default;
};

class TimingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ctipon::ran

#endif  // CTIPON_RAN_TYPES_HPP_
