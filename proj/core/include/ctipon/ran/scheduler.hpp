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

#ifndef CTIPON_RAN_SCHEDULER_HPP_
#define CTIPON_RAN_SCHEDULER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "ctipon/ran/traffic.hpp"
#include "ctipon/ran/types.hpp"

namespace ctipon::ran {

inline constexpr int kSubcarriersPerPrb = 12;
inline constexpr int kSymbolsPerSlot = 14;

// Modulation order and code rate as an exact fraction.
struct Mcs {
  int bits_per_symbol;
  int rate_num;
  int rate_den;
};

int McsTableSize();
Mcs const& McsEntry(int index);  // throws std::out_of_range for unknown index

/// floor(n_prbs * 12 * 14 * bits_per_symbol * code_rate / 8)
std::uint64_t TbsFromPrbs(int n_prbs, int mcs);

/// Smallest PRB count whose TBS covers `bytes`, capped at prbs_total.
int PrbsForBytes(std::uint64_t bytes, int mcs, int prbs_total);

/// Uplink fronthaul bytes for a grant: IQ for every granted subcarrier of all
/// 14 symbols (I and Q at iq_bitwidth each, rounded up to whole bytes per
/// symbol) plus per-symbol framing. Zero PRBs emit nothing.
std::uint64_t FronthaulBytesForPrbs(int n_prbs, FronthaulFormat const& fmt);
std::uint64_t FronthaulBytesForGrant(UplinkGrant const& grant, FronthaulFormat const& fmt);

SimTime SlotStart(std::int64_t slot_index, SlotConfig const& cfg);

/// Instant the grant's fronthaul burst reaches the ONU ingress:
/// tx slot start + slot duration + RU processing - DU timing advance.
/// Throws TimingError if that is negative.
SimTime ArrivalTime(UplinkGrant const& grant, SlotConfig const& cfg);

/// Round-robin uplink scheduling for one cell and one slot.
///
/// UEs with unreserved backlog share prbs_total in whole PRBs. Each UE is
/// capped at the PRBs its backlog needs; remaining PRBs are redistributed, and
/// any indivisible remainder goes to the lowest ue_ids first. Granted bytes
/// are reserved here and debited from the buffer by Transmit() at tx_slot.
std::vector<UplinkGrant> ScheduleSlot(std::int64_t slot_index, std::span<UeState> ues,
                                      SlotConfig const& cfg);

/// Splits `total` units among demands in whole units: equal shares capped at
/// each demand, remainders to the lowest indices first. Exposed for testing.
std::vector<int> SplitWholeUnits(int total, std::span<int const> demands);

}  // namespace ctipon::ran

#endif  // CTIPON_RAN_SCHEDULER_HPP_
