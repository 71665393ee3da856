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

#ifndef CTIPON_SIM_TIME_HPP_
#define CTIPON_SIM_TIME_HPP_

#include <cstdint>

namespace ctipon::sim {

// Virtual time in integer nanoseconds since simulation start. Slot (1 ms),
// frame (125 us) and propagation quantities are all exact in this unit.
using SimTime = std::int64_t;

inline constexpr SimTime kNanosecond = 1;
inline constexpr SimTime kMicrosecond = 1'000;
inline constexpr SimTime kMillisecond = 1'000'000;
inline constexpr SimTime kSecond = 1'000'000'000;

constexpr SimTime Microseconds(std::int64_t us) { return us * kMicrosecond; }
constexpr SimTime Milliseconds(std::int64_t ms) { return ms * kMillisecond; }

constexpr double ToMicroseconds(SimTime t) {
  return static_cast<double>(t) / static_cast<double>(kMicrosecond);
}

// Integer division rounding toward +inf for non-negative operands.
constexpr std::uint64_t CeilDiv(std::uint64_t num, std::uint64_t den) {
  return num / den + (num % den != 0 ? 1 : 0);
}

}  // namespace ctipon::sim

#endif  // CTIPON_SIM_TIME_HPP_
