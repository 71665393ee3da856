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

#ifndef CTIPON_CTI_CODEC_HPP_
#define CTIPON_CTI_CODEC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ctipon/cti/report.hpp"

namespace ctipon::cti {

// Wire format, big-endian:
//
//   offset  size  field
//   0       4     magic "CTI1"
//   4       1     version (1)
//   5       1     msg_type (1 = grant report)
//   6       2     seq
//   8       8     report_time, ns
//   16      2     entry_count
//   18      22*n  entries: tcont_id u16, expected_bytes u32,
//                          arrival_start u64 ns, arrival_end u64 ns
inline constexpr std::size_t kHeaderSize = 18;
inline constexpr std::size_t kEntrySize = 22;
inline constexpr std::size_t kMaxEntries = 1024;
inline constexpr std::uint8_t kMagic[4] = {0x43, 0x54, 0x49, 0x31};

enum class DecodeErrc {
  kTruncated = 1,       // shorter than the fixed header
  kBadMagic,
  kVersionMismatch,
  kUnknownMessageType,
  kTooManyEntries,      // entry_count above kMaxEntries
  kLengthMismatch,      // body length disagrees with entry_count
  kInvalidEntry,        // zero bytes, inverted window, or time out of range
};

std::string_view ToString(DecodeErrc e);

class DecodeError : public std::runtime_error {
 public:
  explicit DecodeError(DecodeErrc code);
  DecodeErrc code() const { return code_; }

 private:
  DecodeErrc code_;
};

class EncodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::size_t EncodedSize(std::size_t entry_count);

std::vector<std::uint8_t> Encode(CtiReport const& report);
CtiReport Decode(std::span<std::uint8_t const> bytes);

}  // namespace ctipon::cti

#endif  // CTIPON_CTI_CODEC_HPP_
