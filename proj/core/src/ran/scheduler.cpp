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

#include "ctipon/ran/scheduler.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

namespace ctipon::ran {

namespace {

// Simplified MCS table: QPSK through 256QAM at a handful of code rates.
constexpr std::array<Mcs, 10> kMcsTable{{
    {2, 1, 4},   // 0  QPSK 0.25
    {2, 1, 2},   // 1  QPSK 0.5
    {2, 3, 4},   // 2  QPSK 0.75
    {4, 1, 2},   // 3  16QAM 0.5
    {4, 3, 4},   // 4  16QAM 0.75
    {6, 2, 3},   // 5  64QAM 0.667
    {6, 3, 4},   // 6  64QAM 0.75
    {6, 9, 10},  // 7  64QAM 0.9
    {8, 3, 4},   // 8  256QAM 0.75
    {8, 9, 10},  // 9  256QAM 0.9
}};

constexpr std::uint64_t kResourceElementsPerPrb = kSubcarriersPerPrb * kSymbolsPerSlot;

}  // namespace

void SlotConfig::Validate() const {
  if (slot_duration <= 0) throw std::invalid_argument("slot_duration must be > 0");
  if (prbs_total <= 0) throw std::invalid_argument("prbs_total must be > 0");
  if (k2 < 1) throw std::invalid_argument("k2 must be >= 1");
  if (ru_processing_delay < 0) throw std::invalid_argument("ru_processing_delay must be >= 0");
  // The earliest arrival is for slot 0's grant; it must not precede the slot
  // boundary at which the grant is issued.
  if (du_timing_advance > (k2 + 1) * slot_duration + ru_processing_delay) {
    throw std::invalid_argument("du_timing_advance exceeds the grant-to-arrival interval");
  }
}

void FronthaulFormat::Validate() const {
  if (iq_bitwidth < 4 || iq_bitwidth > 16) {
    throw std::invalid_argument("iq_bitwidth must be in [4, 16]");
  }
}

int McsTableSize() { return static_cast<int>(kMcsTable.size()); }

Mcs const& McsEntry(int index) {
  if (index < 0 || index >= McsTableSize()) {
    throw std::out_of_range("unknown mcs index " + std::to_string(index));
  }
  return kMcsTable[static_cast<std::size_t>(index)];
}

std::uint64_t TbsFromPrbs(int n_prbs, int mcs) {
  Mcs const& m = McsEntry(mcs);
  if (n_prbs < 0) throw std::invalid_argument("n_prbs must be >= 0");
  std::uint64_t bits_num = static_cast<std::uint64_t>(n_prbs) * kResourceElementsPerPrb *
                           static_cast<std::uint64_t>(m.bits_per_symbol) *
                           static_cast<std::uint64_t>(m.rate_num);
  return bits_num / (8ULL * static_cast<std::uint64_t>(m.rate_den));
}

int PrbsForBytes(std::uint64_t bytes, int mcs, int prbs_total) {
  if (bytes == 0) return 0;
  Mcs const& m = McsEntry(mcs);
  std::uint64_t per_prb_num = kResourceElementsPerPrb *
                              static_cast<std::uint64_t>(m.bits_per_symbol) *
                              static_cast<std::uint64_t>(m.rate_num);
  std::uint64_t need = sim::CeilDiv(bytes * 8ULL * static_cast<std::uint64_t>(m.rate_den),
                                    per_prb_num);
  return static_cast<int>(std::min<std::uint64_t>(need, static_cast<std::uint64_t>(prbs_total)));
}

std::uint64_t FronthaulBytesForPrbs(int n_prbs, FronthaulFormat const& fmt) {
  if (n_prbs <= 0) return 0;
  std::uint64_t bits_per_symbol = static_cast<std::uint64_t>(n_prbs) * kSubcarriersPerPrb * 2ULL *
                                  static_cast<std::uint64_t>(fmt.iq_bitwidth);
  std::uint64_t per_symbol = sim::CeilDiv(bits_per_symbol, 8) + fmt.per_symbol_overhead;
  return per_symbol * kSymbolsPerSlot;
}

std::uint64_t FronthaulBytesForGrant(UplinkGrant const& grant, FronthaulFormat const& fmt) {
  return FronthaulBytesForPrbs(grant.n_prbs, fmt);
}

SimTime SlotStart(std::int64_t slot_index, SlotConfig const& cfg) {
  return slot_index * cfg.slot_duration;
}

SimTime ArrivalTime(UplinkGrant const& grant, SlotConfig const& cfg) {
  SimTime t = SlotStart(grant.tx_slot, cfg) + cfg.slot_duration + cfg.ru_processing_delay -
              cfg.du_timing_advance;
  if (t < 0) {
    throw TimingError("fronthaul arrival for tx_slot " + std::to_string(grant.tx_slot) +
                      " is negative; du_timing_advance too large");
  }
  return t;
}

std::vector<int> SplitWholeUnits(int total, std::span<int const> demands) {
  std::vector<int> out(demands.size(), 0);
  long long demand_sum = std::accumulate(demands.begin(), demands.end(), 0LL);
  if (demand_sum <= total) {
    std::copy(demands.begin(), demands.end(), out.begin());
    return out;
  }
  auto filled = [&](int level) {
    long long s = 0;
    for (int d : demands) s += std::min(d, level);
    return s;
  };
  // Largest common level every demand can be raised to within `total`.
  int lo = 0;
  int hi = *std::max_element(demands.begin(), demands.end());
  while (lo < hi) {
    int mid = lo + (hi - lo + 1) / 2;
    if (filled(mid) <= total) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  long long left = total - filled(lo);
  for (std::size_t i = 0; i < demands.size(); ++i) {
    out[i] = std::min(demands[i], lo);
    if (left > 0 && demands[i] > lo) {
      ++out[i];
      --left;
    }
  }
  return out;
}

std::vector<UplinkGrant> ScheduleSlot(std::int64_t slot_index, std::span<UeState> ues,
                                      SlotConfig const& cfg) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < ues.size(); ++i) {
    if (ues[i].unreserved_bytes() > 0) order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ues[a].id < ues[b].id; });

  std::vector<int> need;
  need.reserve(order.size());
  for (std::size_t i : order) {
    need.push_back(PrbsForBytes(ues[i].unreserved_bytes(), ues[i].mcs, cfg.prbs_total));
  }
  std::vector<int> prbs = SplitWholeUnits(cfg.prbs_total, need);

  std::vector<UplinkGrant> grants;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (prbs[k] == 0) continue;
    UeState& ue = ues[order[k]];
    UplinkGrant g;
    g.grant_slot = slot_index;
    g.tx_slot = slot_index + cfg.k2;
    g.ue_id = ue.id;
    g.n_prbs = prbs[k];
    g.tbs_bytes = TbsFromPrbs(g.n_prbs, ue.mcs);
    g.payload_bytes = std::min(g.tbs_bytes, ue.unreserved_bytes());
    ue.reserved_bytes += g.payload_bytes;
    grants.push_back(g);
  }
  return grants;
}

}  // namespace ctipon::ran
