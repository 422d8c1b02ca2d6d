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

#ifndef SRVSIM_WIRE_UDP_HPP_
#define SRVSIM_WIRE_UDP_HPP_

#include <cstdint>

#include "srvsim/address.hpp"
#include "srvsim/bytes.hpp"
#include "srvsim/result.hpp"
#include "srvsim/wire/ipv6.hpp"

namespace srvsim::wire {

inline constexpr size_t kUdpHeaderSize = 8;

struct UdpHeader {
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  uint16_t length = 0;
  uint16_t checksum = 0;

  bool operator==(const UdpHeader&) const = default;
};

// One's-complement checksum over the IPv6 pseudo-header (RFC 8200 §8.1)
// plus the UDP segment. The checksum field octets are treated as zero.
// A computed 0x0000 is emitted as 0xffff per RFC 768.
inline Result<uint16_t, WireError> compute_udp_checksum(const Ipv6Address& src,
                                                        const Ipv6Address& dst,
                                                        ByteView udp_segment) {
  if (udp_segment.size() < kUdpHeaderSize) return WireError::TooShort;
  uint32_t sum = 0;
  auto add16 = [&sum](uint16_t v) { sum += v; };
  auto add_block = [&add16](ByteView block) {
    size_t i = 0;
    for (; i + 1 < block.size(); i += 2) {
      add16(static_cast<uint16_t>(block[i] << 8 | block[i + 1]));
    }
    if (i < block.size()) add16(static_cast<uint16_t>(block[i] << 8));
  };
  add_block(src.view());
  add_block(dst.view());
  uint32_t upper_len = static_cast<uint32_t>(udp_segment.size());
  add16(static_cast<uint16_t>(upper_len >> 16));
  add16(static_cast<uint16_t>(upper_len));
  add16(kProtoUdp);  // zero(24) | next_header(8)
  size_t i = 0;
  for (; i + 1 < udp_segment.size(); i += 2) {
    if (i == 6) continue;  // checksum field itself
    add16(static_cast<uint16_t>(udp_segment[i] << 8 | udp_segment[i + 1]));
  }
  if (i < udp_segment.size()) add16(static_cast<uint16_t>(udp_segment[i] << 8));
  while (sum >> 16) sum = (sum & 0xffff) + (sum >> 16);
  uint16_t csum = static_cast<uint16_t>(~sum);
  return csum == 0 ? uint16_t{0xffff} : csum;
}

// True iff the segment's stored checksum is non-zero and matches. A zero
// checksum is invalid over IPv6 (RFC 8200 §8.1).
inline bool verify_udp_checksum(const Ipv6Address& src, const Ipv6Address& dst,
                                ByteView udp_segment) {
  if (udp_segment.size() < kUdpHeaderSize) return false;
  uint16_t stored = static_cast<uint16_t>(udp_segment[6] << 8 | udp_segment[7]);
  if (stored == 0) return false;
  auto computed = compute_udp_checksum(src, dst, udp_segment);
  return computed.ok() && computed.value() == stored;
}

struct ParsedUdp {
  UdpHeader header;
  ByteView payload;
};

inline Result<ParsedUdp, WireError> parse_udp(ByteView data) {
  if (data.size() < kUdpHeaderSize) return WireError::TooShort;
  ByteReader r(data);
  UdpHeader h;
  h.src_port = r.u16();
  h.dst_port = r.u16();
  h.length = r.u16();
  h.checksum = r.u16();
  if (h.length != data.size()) return WireError::LengthMismatch;
  return ParsedUdp{h, r.rest()};
}

// Builds the UDP segment with length and checksum filled in.
inline Result<Bytes, WireError> serialize_udp(const Ipv6Address& src,
                                              const Ipv6Address& dst,
                                              uint16_t src_port, uint16_t dst_port,
                                              ByteView payload) {
  if (payload.size() + kUdpHeaderSize > 0xffff) return WireError::Oversize;
  Bytes out;
  out.reserve(kUdpHeaderSize + payload.size());
  ByteWriter w(out);
  w.u16(src_port);
  w.u16(dst_port);
  w.u16(static_cast<uint16_t>(kUdpHeaderSize + payload.size()));
  w.u16(0);
  w.raw(payload);
  auto csum = compute_udp_checksum(src, dst, out);
  if (!csum.ok()) return csum.error();
  w.patch_u16(6, csum.value());
  return out;
}

}  // namespace srvsim::wire

#endif  // SRVSIM_WIRE_UDP_HPP_
