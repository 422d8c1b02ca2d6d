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

#ifndef SRVSIM_WIRE_IPV6_HPP_
#define SRVSIM_WIRE_IPV6_HPP_

#include <cstdint>

#include "srvsim/address.hpp"
#include "srvsim/bytes.hpp"
#include "srvsim/result.hpp"

namespace srvsim::wire {

enum class WireError {
  TooShort,
  BadVersion,
  LengthMismatch,
  Oversize,
  WrongRoutingType,
  LengthInconsistent,
  EmptySegmentList,
  UnsupportedMessageType,
  BadExtensionChain,
  BadChecksum,
};

inline const char* to_string(WireError e) {
  switch (e) {
    case WireError::TooShort: return "TooShort";
    case WireError::BadVersion: return "BadVersion";
    case WireError::LengthMismatch: return "LengthMismatch";
    case WireError::Oversize: return "Oversize";
    case WireError::WrongRoutingType: return "WrongRoutingType";
    case WireError::LengthInconsistent: return "LengthInconsistent";
    case WireError::EmptySegmentList: return "EmptySegmentList";
    case WireError::UnsupportedMessageType: return "UnsupportedMessageType";
    case WireError::BadExtensionChain: return "BadExtensionChain";
    case WireError::BadChecksum: return "BadChecksum";
  }
  return "UnknownError";
}

// IPv6 protocol numbers used by the data plane.
inline constexpr uint8_t kProtoIpv4 = 4;
inline constexpr uint8_t kProtoUdp = 17;
inline constexpr uint8_t kProtoIpv6 = 41;
inline constexpr uint8_t kProtoRouting = 43;
inline constexpr uint8_t kProtoNoNext = 59;
// "Reserved for experimentation" (RFC 3692); carries opaque app payloads.
inline constexpr uint8_t kProtoExperimental = 253;

inline constexpr size_t kIpv6HeaderSize = 40;
inline constexpr uint8_t kDefaultHopLimit = 64;

// Fixed IPv6 header, RFC 8200 §3.
struct Ipv6Header {
  uint8_t version = 6;
  uint8_t traffic_class = 0;
  uint32_t flow_label = 0;  // 20 bits
  uint16_t payload_length = 0;
  uint8_t next_header = kProtoNoNext;
  uint8_t hop_limit = kDefaultHopLimit;
  Ipv6Address src;
  Ipv6Address dst;

  bool operator==(const Ipv6Header&) const = default;
};

struct ParsedIpv6 {
  Ipv6Header header;
  ByteView payload;  // view into the input; length == header.payload_length
};

inline Result<ParsedIpv6, WireError> parse_ipv6(ByteView data) {
  if (data.size() < kIpv6HeaderSize) return WireError::TooShort;
  ByteReader r(data);
  uint32_t vtf = r.u32();
  Ipv6Header h;
  h.version = static_cast<uint8_t>(vtf >> 28);
  if (h.version != 6) return WireError::BadVersion;
  h.traffic_class = static_cast<uint8_t>((vtf >> 20) & 0xff);
  h.flow_label = vtf & 0xfffff;
  h.payload_length = r.u16();
  h.next_header = r.u8();
  h.hop_limit = r.u8();
  h.src = Ipv6Address::from_view(r.raw(16));
  h.dst = Ipv6Address::from_view(r.raw(16));
  if (data.size() - kIpv6HeaderSize != h.payload_length) {
    return WireError::LengthMismatch;
  }
  return ParsedIpv6{h, r.rest()};
}

// Serializes header + payload; the length field is recomputed from the
// payload, whatever the struct says.
inline Result<Bytes, WireError> serialize_ipv6(const Ipv6Header& h, ByteView payload) {
  if (payload.size() > 0xffff) return WireError::Oversize;
  Bytes out;
  out.reserve(kIpv6HeaderSize + payload.size());
  ByteWriter w(out);
  w.u32(uint32_t{6} << 28 | static_cast<uint32_t>(h.traffic_class) << 20 |
        (h.flow_label & 0xfffff));
  w.u16(static_cast<uint16_t>(payload.size()));
  w.u8(h.next_header);
  w.u8(h.hop_limit);
  w.raw(h.src.view());
  w.raw(h.dst.view());
  w.raw(payload);
  return out;
}

}  // namespace srvsim::wire

#endif  // SRVSIM_WIRE_IPV6_HPP_
