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

#ifndef CTIPON_UTIL_HASH_HPP_
#define CTIPON_UTIL_HASH_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace ctipon::util {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// FNV-1a, 64 bit. Used for event-trace digests and scenario identity.
class Fnv1a {
 public:
  void Update(const void* data, std::size_t n) {
    auto const* p = static_cast<unsigned char const*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      state_ ^= p[i];
      state_ *= kFnvPrime;
    }
  }
  void Update(std::string_view s) { Update(s.data(), s.size()); }
  // Mixes an integer in little-endian byte order regardless of host order.
  void UpdateU64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    Update(b, sizeof b);
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = kFnvOffset;
};

inline std::uint64_t HashString(std::string_view s) {
  Fnv1a h;
  h.Update(s);
  return h.digest();
}

std::string ToHex(std::uint64_t v);

}  // namespace ctipon::util

#endif  // CTIPON_UTIL_HASH_HPP_
