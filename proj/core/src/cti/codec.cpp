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

#include "ctipon/cti/codec.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace ctipon::cti {

namespace {

template <typename T>
void Put(std::vector<std::uint8_t>& out, T v) {
  for (int shift = 8 * (static_cast<int>(sizeof(T)) - 1); shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> shift));
  }
}

template <typename T>
T Get(std::span<std::uint8_t const> in, std::size_t offset) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v = (v << 8) | in[offset + i];
  return static_cast<T>(v);
}

bool ValidTime(std::uint64_t t) {
  return t <= static_cast<std::uint64_t>(std::numeric_limits<SimTime>::max());
}

}  // namespace

std::string_view ToString(DecodeErrc e) {
  switch (e) {
    case DecodeErrc::kTruncated: return "truncated";
    case DecodeErrc::kBadMagic: return "bad magic";
    case DecodeErrc::kVersionMismatch: return "version mismatch";
    case DecodeErrc::kUnknownMessageType: return "unknown message type";
    case DecodeErrc::kTooManyEntries: return "too many entries";
    case DecodeErrc::kLengthMismatch: return "length mismatch";
    case DecodeErrc::kInvalidEntry: return "invalid entry";
  }
  return "unknown";
}

DecodeError::DecodeError(DecodeErrc code)
    : std::runtime_error("CTI decode: " + std::string(ToString(code))), code_(code) {}

std::size_t EncodedSize(std::size_t entry_count) {
  return kHeaderSize + kEntrySize * entry_count;
}

std::vector<std::uint8_t> Encode(CtiReport const& report) {
  if (report.entries.size() > kMaxEntries) {
    throw EncodeError("CTI report has " + std::to_string(report.entries.size()) +
                      " entries; limit is " + std::to_string(kMaxEntries));
  }
  if (report.version != kVersion) throw EncodeError("unsupported CTI version");
  if (report.report_time < 0) throw EncodeError("negative report_time");
  for (auto const& e : report.entries) {
    if (e.expected_bytes == 0 || e.arrival_start < 0 || e.arrival_start > e.arrival_end) {
      throw EncodeError("invalid CTI entry for tcont " + std::to_string(e.tcont_id));
    }
  }

  std::vector<std::uint8_t> out;
  out.reserve(EncodedSize(report.entries.size()));
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  Put<std::uint8_t>(out, report.version);
  Put<std::uint8_t>(out, kMsgTypeGrantReport);
  Put<std::uint16_t>(out, report.seq);
  Put<std::uint64_t>(out, static_cast<std::uint64_t>(report.report_time));
  Put<std::uint16_t>(out, static_cast<std::uint16_t>(report.entries.size()));
  for (auto const& e : report.entries) {
    Put<std::uint16_t>(out, e.tcont_id);
    Put<std::uint32_t>(out, e.expected_bytes);
    Put<std::uint64_t>(out, static_cast<std::uint64_t>(e.arrival_start));
    Put<std::uint64_t>(out, static_cast<std::uint64_t>(e.arrival_end));
  }
  return out;
}

CtiReport Decode(std::span<std::uint8_t const> bytes) {
  if (bytes.size() < kHeaderSize) throw DecodeError(DecodeErrc::kTruncated);
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw DecodeError(DecodeErrc::kBadMagic);
  }
  if (bytes[4] != kVersion) throw DecodeError(DecodeErrc::kVersionMismatch);
  if (bytes[5] != kMsgTypeGrantReport) throw DecodeError(DecodeErrc::kUnknownMessageType);

  CtiReport r;
  r.version = bytes[4];
  r.seq = Get<std::uint16_t>(bytes, 6);
  auto report_time = Get<std::uint64_t>(bytes, 8);
  auto count = Get<std::uint16_t>(bytes, 16);
  if (count > kMaxEntries) throw DecodeError(DecodeErrc::kTooManyEntries);
  if (bytes.size() != EncodedSize(count)) throw DecodeError(DecodeErrc::kLengthMismatch);
  if (!ValidTime(report_time)) throw DecodeError(DecodeErrc::kInvalidEntry);
  r.report_time = static_cast<SimTime>(report_time);

  r.entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t off = kHeaderSize + i * kEntrySize;
    CtiEntry e;
    e.tcont_id = Get<std::uint16_t>(bytes, off);
    e.expected_bytes = Get<std::uint32_t>(bytes, off + 2);
    auto start = Get<std::uint64_t>(bytes, off + 6);
    auto end = Get<std::uint64_t>(bytes, off + 14);
    if (e.expected_bytes == 0 || !ValidTime(start) || !ValidTime(end) || start > end) {
      throw DecodeError(DecodeErrc::kInvalidEntry);
    }
    e.arrival_start = static_cast<SimTime>(start);
    e.arrival_end = static_cast<SimTime>(end);
    r.entries.push_back(e);
  }
  return r;
}

}  // namespace ctipon::cti
