// Copyright 2026 srvsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SRVSIM_BYTES_HPP_
#define SRVSIM_BYTES_HPP_

#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace srvsim {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

// Big-endian field appender. All multi-octet wire fields are network order.
class ByteWriter {
 public:
  explicit ByteWriter(Bytes& out) : out_(out) {}

  void u8(uint8_t v) { out_.push_back(v); }
  void u16(uint16_t v) {
    out_.push_back(static_cast<uint8_t>(v >> 8));
    out_.push_back(static_cast<uint8_t>(v));
  }
  void u24(uint32_t v) {
    out_.push_back(static_cast<uint8_t>(v >> 16));
    out_.push_back(static_cast<uint8_t>(v >> 8));
    out_.push_back(static_cast<uint8_t>(v));
  }
  void u32(uint32_t v) {
    u16(static_cast<uint16_t>(v >> 16));
    u16(static_cast<uint16_t>(v));
  }
  void u64(uint64_t v) {
    u32(static_cast<uint32_t>(v >> 32));
    u32(static_cast<uint32_t>(v));
  }
  void raw(ByteView v) { out_.insert(out_.end(), v.begin(), v.end()); }

  size_t size() const { return out_.size(); }
  // Patches a previously written big-endian u16 in place.
  void patch_u16(size_t offset, uint16_t v) {
    out_[offset] = static_cast<uint8_t>(v >> 8);
    out_[offset + 1] = static_cast<uint8_t>(v);
  }

 private:
  Bytes& out_;
};

// Bounds-checked big-endian field reader over a byte view.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  size_t remaining() const { return data_.size() - pos_; }
  size_t position() const { return pos_; }
  bool can_read(size_t n) const { return remaining() >= n; }

  uint8_t u8() { return data_[pos_++]; }
  uint16_t u16() {
    uint16_t v = static_cast<uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  uint32_t u24() {
    uint32_t v = static_cast<uint32_t>(data_[pos_]) << 16 |
                 static_cast<uint32_t>(data_[pos_ + 1]) << 8 |
                 static_cast<uint32_t>(data_[pos_ + 2]);
    pos_ += 3;
    return v;
  }
  uint32_t u32() {
    uint32_t v = static_cast<uint32_t>(u16()) << 16;
    return v | u16();
  }
  uint64_t u64() {
    uint64_t v = static_cast<uint64_t>(u32()) << 32;
    return v | u32();
  }
  ByteView raw(size_t n) {
    ByteView v = data_.subspan(pos_, n);
    pos_ += n;
    return v;
  }
  ByteView rest() {
    ByteView v = data_.subspan(pos_);
    pos_ = data_.size();
    return v;
  }

 private:
  ByteView data_;
  size_t pos_ = 0;
};

inline Bytes to_bytes(const std::string& s) {
  return Bytes(s.begin(), s.end());
}

inline std::string to_hex(ByteView data) {
  static const char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

// 64-bit FNV-1a, used for payload identity in traces.
inline uint64_t fnv1a(ByteView data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint8_t b : data) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace srvsim

#endif  // SRVSIM_BYTES_HPP_
