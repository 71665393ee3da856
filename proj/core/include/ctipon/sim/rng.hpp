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

#ifndef CTIPON_SIM_RNG_HPP_
#define CTIPON_SIM_RNG_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace ctipon::sim {

/// Independent, reproducible random stream identified by (seed, stream_id).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Conversions to real-valued draws are done here rather than with
/// the <random> distributions, whose algorithms are implementation-defined,
/// so a given (seed, stream_id) yields the same draws on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view stream_id);

  std::uint64_t seed() const { return seed_; }
  std::string const& stream_id() const { return stream_id_; }

  std::uint64_t NextU64() { return engine_(); }
  /// Uniform on [0, 1) with 53 bits of resolution.
  double Uniform();
  /// Exponential with the given mean.
  double Exponential(double mean);
  /// Standard normal (Box-Muller, pairs cached).
  double Normal();
  bool Bernoulli(double p);
  /// Uniform integer on [0, n). n must be > 0.
  std::uint64_t Below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::string stream_id_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// Mixes seed and stream label into an engine seed (splitmix64 finalizer).
std::uint64_t DeriveStreamSeed(std::uint64_t seed, std::string_view stream_id);

}  // namespace ctipon::sim

#endif  // CTIPON_SIM_RNG_HPP_
