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

#ifndef SRVSIM_WIRE_GTPU_HPP_
#define SRVSIM_WIRE_GTPU_HPP_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "srvsim/bytes.hpp"
#include "srvsim/result.hpp"
#include "srvsim/wire/ipv6.hpp"

namespace srvsim::wire {

inline constexpr uint16_t kGtpuUdpPort = 2152;
inline constexpr size_t kGtpuFixedSize = 8;

// GTP-U message types in scope (TS 29.281 table 7.1-1). Everything else is
// a decode error; the data plane needs nothing else.
inline constexpr uint8_t kGtpuMsgEchoRequest = 1;
inline constexpr uint8_t kGtpuMsgEchoResponse = 2;
inline constexpr uint8_t kGtpuMsgGpdu = 255;

// Extension header type for the PDU Session Container (TS 38.415).
inline constexpr uint8_t kGtpuExtPduSessionContainer = 0x85;

inline constexpr uint8_t kPduTypeDownlink = 0;
inline constexpr uint8_t kPduTypeUplink = 1;

// Minimal PDU Session Container: PDU type nibble plus the QoS flow id.
struct PduSessionContainer {
  uint8_t pdu_type = kPduTypeDownlink;  // 0 downlink, 1 uplink
  uint8_t qfi = 0;                      // 6 bits

  bool operator==(const PduSessionContainer&) const = default;
};

// Any other extension header, preserved opaquely and re-emitted
// byte-identically. `body` excludes the length and next-type octets and is
// therefore always 4n-2 octets long.
struct RawGtpuExtension {
  uint8_t type = 0;
  Bytes body;

  bool operator==(const RawGtpuExtension&) const = default;
};

using GtpuExtension = std::variant<PduSessionContainer, RawGtpuExtension>;

struct GtpuHeader {
  uint8_t message_type = kGtpuMsgGpdu;
  uint32_t teid = 0;
  bool s_flag = false;
  bool pn_flag = false;
  uint16_t sequence = 0;
  uint8_t npdu = 0;
  // Wire-ordered extension chain; e_flag is implied by non-emptiness.
  std::vector<GtpuExtension> extensions;

  bool e_flag() const { return !extensions.empty(); }
  bool has_optional_block() const { return e_flag() || s_flag || pn_flag; }

  std::optional<PduSessionContainer> pdu_session_container() const {
    for (const auto& ext : extensions) {
      if (const auto* psc = std::get_if<PduSessionContainer>(&ext)) return *psc;
    }
    return std::nullopt;
  }

  bool operator==(const GtpuHeader&) const = default;
};

struct ParsedGtpu {
  GtpuHeader header;
  ByteView payload;
};

inline Result<ParsedGtpu, WireError> parse_gtpu(ByteView data) {
  if (data.size() < kGtpuFixedSize) return WireError::TooShort;
  ByteReader r(data);
  uint8_t flags = r.u8();
  if ((flags >> 5) != 1) return WireError::BadVersion;
  if ((flags & 0x10) == 0) return WireError::BadVersion;  // PT=0 is GTP'
  GtpuHeader h;
  bool e_flag = flags & 0x04;
  h.s_flag = flags & 0x02;
  h.pn_flag = flags & 0x01;
  h.message_type = r.u8();
  if (h.message_type != kGtpuMsgGpdu && h.message_type != kGtpuMsgEchoRequest &&
      h.message_type != kGtpuMsgEchoResponse) {
    return WireError::UnsupportedMessageType;
  }
  uint16_t length = r.u16();
  h.teid = r.u32();
  if (data.size() - kGtpuFixedSize != length) return WireError::LengthMismatch;
  if (e_flag || h.s_flag || h.pn_flag) {
    if (!r.can_read(4)) return WireError::TooShort;
    // Fields whose flag is unset occupy wire space but "shall not be
    // interpreted" (TS 29.281 §5.1); they decode as zero.
    uint16_t seq = r.u16();
    uint8_t npdu = r.u8();
    h.sequence = h.s_flag ? seq : 0;
    h.npdu = h.pn_flag ? npdu : 0;
    uint8_t next_ext = r.u8();
    if (!e_flag && next_ext != 0) return WireError::BadExtensionChain;
    while (next_ext != 0) {
      if (!r.can_read(1)) return WireError::BadExtensionChain;
      uint8_t ext_len = r.u8();  // 4-octet units, includes len + next octets
      if (ext_len == 0) return WireError::BadExtensionChain;
      size_t body_len = static_cast<size_t>(ext_len) * 4 - 2;
      if (!r.can_read(body_len + 1)) return WireError::BadExtensionChain;
      ByteView body = r.raw(body_len);
      if (next_ext == kGtpuExtPduSessionContainer && body_len == 2) {
        PduSessionContainer psc;
        psc.pdu_type = body[0] >> 4;
        psc.qfi = body[1] & 0x3f;
        h.extensions.emplace_back(psc);
      } else {
        h.extensions.emplace_back(RawGtpuExtension{next_ext, Bytes(body.begin(), body.end())});
      }
      next_ext = r.u8();
    }
    if (e_flag && h.extensions.empty()) return WireError::BadExtensionChain;
  }
  return ParsedGtpu{h, r.rest()};
}

namespace detail {
inline void write_gtpu_extension(ByteWriter& w, const GtpuExtension& ext, uint8_t next_type) {
  if (const auto* psc = std::get_if<PduSessionContainer>(&ext)) {
    w.u8(1);  // one 4-octet unit
    w.u8(static_cast<uint8_t>(psc->pdu_type << 4));
    w.u8(psc->qfi & 0x3f);
    w.u8(next_type);
  } else {
    const auto& raw = std::get<RawGtpuExtension>(ext);
    w.u8(static_cast<uint8_t>((raw.body.size() + 2) / 4));
    w.raw(raw.body);
    w.u8(next_type);
  }
}

inline uint8_t gtpu_extension_type(const GtpuExtension& ext) {
  if (std::holds_alternative<PduSessionContainer>(ext)) return kGtpuExtPduSessionContainer;
  return std::get<RawGtpuExtension>(ext).type;
}
}  // namespace detail

// Length field and flags are recomputed. When any of E/S/PN is in play the
// whole 4-octet optional block is emitted (TS 29.281 §5.1 note 4), unused
// members zero-filled.
inline Result<Bytes, WireError> serialize_gtpu(const GtpuHeader& h, ByteView inner) {
  for (const auto& ext : h.extensions) {
    if (const auto* raw = std::get_if<RawGtpuExtension>(&ext)) {
      if (raw->body.size() % 4 != 2 || raw->body.empty()) return WireError::BadExtensionChain;
      if (raw->type == 0) return WireError::BadExtensionChain;
    }
  }
  Bytes out;
  ByteWriter w(out);
  uint8_t flags = 0x30;  // version 1, PT=1
  if (h.e_flag()) flags |= 0x04;
  if (h.s_flag) flags |= 0x02;
  if (h.pn_flag) flags |= 0x01;
  w.u8(flags);
  w.u8(h.message_type);
  w.u16(0);  // patched below
  w.u32(h.teid);
  if (h.has_optional_block()) {
    w.u16(h.s_flag ? h.sequence : 0);
    w.u8(h.pn_flag ? h.npdu : 0);
    if (h.extensions.empty()) {
      w.u8(0);
    } else {
      w.u8(detail::gtpu_extension_type(h.extensions.front()));
      for (size_t i = 0; i < h.extensions.size(); ++i) {
        uint8_t next = i + 1 < h.extensions.size()
                           ? detail::gtpu_extension_type(h.extensions[i + 1])
                           : 0;
        detail::write_gtpu_extension(w, h.extensions[i], next);
      }
    }
  }
  size_t after_header = out.size() - kGtpuFixedSize + inner.size();
  if (after_header > 0xffff) return WireError::Oversize;
  w.raw(inner);
  w.patch_u16(2, static_cast<uint16_t>(after_header));
  return out;
}

}  // namespace srvsim::wire

#endif  // SRVSIM_WIRE_GTPU_HPP_
