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

#ifndef SRVSIM_WIRE_SRH_HPP_
#define SRVSIM_WIRE_SRH_HPP_

#include <cstdint>
#include <vector>

#include "srvsim/address.hpp"
#include "srvsim/bytes.hpp"
#include "srvsim/result.hpp"
#include "srvsim/wire/ipv6.hpp"

namespace srvsim::wire {

inline constexpr uint8_t kSrhRoutingType = 4;
inline constexpr size_t kSrhFixedSize = 8;

// Segment Routing Header, RFC 8754 §2. Segment list is kept in wire order:
// segments[0] is the final destination, segments[last_entry] the first hop.
// TLVs are not supported; hdr_ext_len must account exactly for the list.
struct SegmentRoutingHeader {
  uint8_t next_header = kProtoNoNext;
  uint8_t hdr_ext_len = 0;  // recomputed on serialize
  uint8_t routing_type = kSrhRoutingType;
  uint8_t segments_left = 0;
  uint8_t last_entry = 0;  // recomputed on serialize
  uint8_t flags = 0;
  uint16_t tag = 0;
  std::vector<Ipv6Address> segments;

  bool operator==(const SegmentRoutingHeader&) const = default;
};

struct ParsedSrh {
  SegmentRoutingHeader header;
  ByteView payload;
};

inline Result<ParsedSrh, WireError> parse_srh(ByteView data) {
  if (data.size() < kSrhFixedSize) return WireError::TooShort;
  ByteReader r(data);
  SegmentRoutingHeader h;
  h.next_header = r.u8();
  h.hdr_ext_len = r.u8();
  h.routing_type = r.u8();
  if (h.routing_type != kSrhRoutingType) return WireError::WrongRoutingType;
  h.segments_left = r.u8();
  h.last_entry = r.u8();
  h.flags = r.u8();
  h.tag = r.u16();
  size_t count = static_cast<size_t>(h.last_entry) + 1;
  if (h.hdr_ext_len != 2 * count) return WireError::LengthInconsistent;
  if (h.segments_left > count) return WireError::LengthInconsistent;
  if (r.remaining() < 16 * count) return WireError::TooShort;
  h.segments.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    h.segments.push_back(Ipv6Address::from_view(r.raw(16)));
  }
  return ParsedSrh{h, r.rest()};
}

inline Result<Bytes, WireError> serialize_srh(const SegmentRoutingHeader& h) {
  if (h.segments.empty()) return WireError::EmptySegmentList;
  if (h.segments.size() > 127) return WireError::Oversize;  // hdr_ext_len is 8 bits
  Bytes out;
  out.reserve(kSrhFixedSize + 16 * h.segments.size());
  ByteWriter w(out);
  w.u8(h.next_header);
  w.u8(static_cast<uint8_t>(2 * h.segments.size()));
  w.u8(kSrhRoutingType);
  w.u8(h.segments_left);
  w.u8(static_cast<uint8_t>(h.segments.size() - 1));
  w.u8(h.flags);
  w.u16(h.tag);
  for (const auto& seg : h.segments) w.raw(seg.view());
  return out;
}

}  // namespace srvsim::wire

#endif  // SRVSIM_WIRE_SRH_HPP_
