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

#ifndef SRVSIM_PFCP_CODEC_HPP_
#define SRVSIM_PFCP_CODEC_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srvsim/address.hpp"
#include "srvsim/bytes.hpp"
#include "srvsim/result.hpp"

namespace srvsim::pfcp {

inline constexpr uint16_t kPfcpUdpPort = 8805;

// Message types (TS 29.244 table 7.3-1), the subset the controller speaks.
enum MsgType : uint8_t {
  kHeartbeatRequest = 1,
  kHeartbeatResponse = 2,
  kAssociationSetupRequest = 5,
  kAssociationSetupResponse = 6,
  kSessionEstablishmentRequest = 50,
  kSessionEstablishmentResponse = 51,
  kSessionModificationRequest = 52,
  kSessionModificationResponse = 53,
  kSessionDeletionRequest = 54,
  kSessionDeletionResponse = 55,
};

// IE types (TS 29.244 §8.1). Grouped: Create PDR, PDI, Create FAR,
// Forwarding Parameters. Everything else decodes opaquely and round-trips.
enum IeType : uint16_t {
  kIeCreatePdr = 1,
  kIePdi = 2,
  kIeCreateFar = 3,
  kIeForwardingParameters = 4,
  kIeCause = 19,
  kIeSourceInterface = 20,
  kIeFTeid = 21,
  kIeNetworkInstance = 22,
  kIePrecedence = 29,
  kIeDestinationInterface = 42,
  kIeApplyAction = 44,
  kIePdrId = 56,
  kIeFSeid = 57,
  kIeNodeId = 60,
  kIeOuterHeaderCreation = 84,
  kIeUeIpAddress = 93,
  kIeOuterHeaderRemoval = 95,
  kIeRecoveryTimeStamp = 96,
  kIeFarId = 108,
};

// Cause values (TS 29.244 §8.2.1).
enum Cause : uint8_t {
  kCauseAccepted = 1,
  kCauseRequestRejected = 64,
  kCauseSessionContextNotFound = 65,
  kCauseMandatoryIeMissing = 66,
};

// Interface values for Source/Destination Interface IEs.
inline constexpr uint8_t kInterfaceAccess = 0;
inline constexpr uint8_t kInterfaceCore = 1;

inline constexpr uint8_t kApplyActionForward = 0x02;
inline constexpr uint8_t kOuterHeaderRemovalGtpuUdpIpv6 = 1;

inline bool is_grouped_ie(uint16_t type) {
  return type == kIeCreatePdr || type == kIePdi || type == kIeCreateFar ||
         type == kIeForwardingParameters;
}

// One TLV. Grouped IEs carry children; scalar IEs carry raw value octets.
struct Ie {
  uint16_t type = 0;
  Bytes value;
  std::vector<Ie> children;

  const Ie* find(uint16_t t) const {
    for (const auto& ie : children) {
      if (ie.type == t) return &ie;
    }
    return nullptr;
  }
  std::vector<const Ie*> find_all(uint16_t t) const {
    std::vector<const Ie*> out;
    for (const auto& ie : children) {
      if (ie.type == t) out.push_back(&ie);
    }
    return out;
  }

  bool operator==(const Ie&) const = default;
};

struct PfcpMessage {
  uint8_t message_type = 0;
  std::optional<uint64_t> seid;  // header SEID; present on session messages
  uint32_t sequence = 0;         // 24 bits
  std::vector<Ie> ies;

  const Ie* find(uint16_t t) const {
    for (const auto& ie : ies) {
      if (ie.type == t) return &ie;
    }
    return nullptr;
  }
  std::vector<const Ie*> find_all(uint16_t t) const {
    std::vector<const Ie*> out;
    for (const auto& ie : ies) {
      if (ie.type == t) out.push_back(&ie);
    }
    return out;
  }

  bool operator==(const PfcpMessage&) const = default;
};

enum class PfcpError { TooShort, BadVersion, TlvOverrun };

inline const char* to_string(PfcpError e) {
  switch (e) {
    case PfcpError::TooShort: return "TooShort";
    case PfcpError::BadVersion: return "BadVersion";
    case PfcpError::TlvOverrun: return "TlvOverrun";
  }
  return "?";
}

namespace detail {

inline void encode_ie(ByteWriter& w, const Ie& ie) {
  w.u16(ie.type);
  size_t len_pos = w.size();
  w.u16(0);
  size_t start = w.size();
  if (is_grouped_ie(ie.type)) {
    for (const auto& child : ie.children) encode_ie(w, child);
  } else {
    w.raw(ie.value);
  }
  w.patch_u16(len_pos, static_cast<uint16_t>(w.size() - start));
}

inline Result<std::vector<Ie>, PfcpError> decode_ies(ByteView data) {
  std::vector<Ie> out;
  ByteReader r(data);
  while (r.remaining() > 0) {
    if (!r.can_read(4)) return PfcpError::TlvOverrun;
    Ie ie;
    ie.type = r.u16();
    uint16_t len = r.u16();
    if (!r.can_read(len)) return PfcpError::TlvOverrun;
    ByteView value = r.raw(len);
    if (is_grouped_ie(ie.type)) {
      auto children = decode_ies(value);
      if (!children.ok()) return children.error();
      ie.children = std::move(children).value();
    } else {
      ie.value.assign(value.begin(), value.end());
    }
    out.push_back(std::move(ie));
  }
  return out;
}

}  // namespace detail

inline Bytes encode_pfcp(const PfcpMessage& msg) {
  Bytes out;
  ByteWriter w(out);
  w.u8(static_cast<uint8_t>(0x20 | (msg.seid ? 0x01 : 0x00)));
  w.u8(msg.message_type);
  w.u16(0);  // patched below
  if (msg.seid) w.u64(*msg.seid);
  w.u24(msg.sequence & 0xffffff);
  w.u8(0);  // spare / message priority
  for (const auto& ie : msg.ies) detail::encode_ie(w, ie);
  w.patch_u16(2, static_cast<uint16_t>(out.size() - 4));
  return out;
}

inline Result<PfcpMessage, PfcpError> decode_pfcp(ByteView data) {
  if (data.size() < 8) return PfcpError::TooShort;
  ByteReader r(data);
  uint8_t flags = r.u8();
  if ((flags >> 5) != 1) return PfcpError::BadVersion;
  PfcpMessage msg;
  msg.message_type = r.u8();
  uint16_t length = r.u16();
  if (data.size() - 4 != length) return PfcpError::TooShort;
  if (flags & 0x01) {
    if (!r.can_read(12)) return PfcpError::TooShort;
    msg.seid = r.u64();
  }
  if (!r.can_read(4)) return PfcpError::TooShort;
  msg.sequence = r.u24();
  r.u8();  // spare
  auto ies = detail::decode_ies(r.rest());
  if (!ies.ok()) return ies.error();
  msg.ies = std::move(ies).value();
  return msg;
}

// --- IE builders ------------------------------------------------------------

inline Ie ie_u8(uint16_t type, uint8_t v) { return Ie{type, {v}, {}}; }

inline Ie ie_u16(uint16_t type, uint16_t v) {
  return Ie{type, {static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v)}, {}};
}

inline Ie ie_u32(uint16_t type, uint32_t v) {
  Ie ie{type, {}, {}};
  ByteWriter w(ie.value);
  w.u32(v);
  return ie;
}

inline Ie ie_grouped(uint16_t type, std::vector<Ie> children) {
  return Ie{type, {}, std::move(children)};
}

inline Ie ie_cause(uint8_t cause) { return ie_u8(kIeCause, cause); }

inline Ie ie_recovery_time_stamp(uint32_t ntp_seconds) {
  return ie_u32(kIeRecoveryTimeStamp, ntp_seconds);
}

// Node ID, type 1 = IPv6 address (TS 29.244 §8.2.38).
inline Ie ie_node_id_v6(const Ipv6Address& addr) {
  Ie ie{kIeNodeId, {0x01}, {}};
  ie.value.insert(ie.value.end(), addr.bytes().begin(), addr.bytes().end());
  return ie;
}

inline std::optional<Ipv6Address> node_id_v6(const Ie& ie) {
  if (ie.value.size() != 17 || ie.value[0] != 0x01) return std::nullopt;
  return Ipv6Address::from_view(ByteView(ie.value).subspan(1));
}

// F-SEID flags: V6 is bit 1 (TS 29.244 §8.2.37).
inline Ie ie_fseid_v6(uint64_t seid, const Ipv6Address& addr) {
  Ie ie{kIeFSeid, {0x01}, {}};
  ByteWriter w(ie.value);
  w.u64(seid);
  w.raw(addr.view());
  return ie;
}

struct FSeid {
  uint64_t seid = 0;
  Ipv6Address address;
};

inline std::optional<FSeid> fseid_v6(const Ie& ie) {
  if (ie.value.size() != 25 || (ie.value[0] & 0x01) == 0) return std::nullopt;
  ByteReader r(ie.value);
  r.u8();
  FSeid f;
  f.seid = r.u64();
  f.address = Ipv6Address::from_view(r.raw(16));
  return f;
}

// F-TEID flags: V6 is bit 2 (TS 29.244 §8.2.3; note the bit order differs
// from F-SEID).
inline Ie ie_fteid_v6(uint32_t teid, const Ipv6Address& addr) {
  Ie ie{kIeFTeid, {0x02}, {}};
  ByteWriter w(ie.value);
  w.u32(teid);
  w.raw(addr.view());
  return ie;
}

struct FTeid {
  uint32_t teid = 0;
  Ipv6Address address;
};

inline std::optional<FTeid> fteid_v6(const Ie& ie) {
  if (ie.value.size() != 21 || (ie.value[0] & 0x02) == 0) return std::nullopt;
  ByteReader r(ie.value);
  r.u8();
  FTeid f;
  f.teid = r.u32();
  f.address = Ipv6Address::from_view(r.raw(16));
  return f;
}

// UE IP Address flags: V6 bit 1, S/D bit 3 (TS 29.244 §8.2.62).
inline Ie ie_ue_ip_v6(const Ipv6Address& addr, bool is_destination = true) {
  Ie ie{kIeUeIpAddress, {static_cast<uint8_t>(0x01 | (is_destination ? 0x04 : 0x00))}, {}};
  ie.value.insert(ie.value.end(), addr.bytes().begin(), addr.bytes().end());
  return ie;
}

inline std::optional<Ipv6Address> ue_ip_v6(const Ie& ie) {
  if (ie.value.size() != 17 || (ie.value[0] & 0x01) == 0) return std::nullopt;
  return Ipv6Address::from_view(ByteView(ie.value).subspan(1));
}

inline Ie ie_network_instance(const std::string& name) {
  return Ie{kIeNetworkInstance, to_bytes(name), {}};
}

inline std::string network_instance(const Ie& ie) {
  return std::string(ie.value.begin(), ie.value.end());
}

// Outer Header Creation (TS 29.244 §8.2.56): description 0x0200 is
// GTP-U/UDP/IPv6, then TEID and the gNB address. A trailing octet carries
// the QFI the downlink tunnel must mark; standard decoders show the first
// 22 octets and ignore the extension.
inline Ie ie_outer_header_creation_gtpu_v6(uint32_t teid, const Ipv6Address& gnb,
                                           uint8_t qfi) {
  Ie ie{kIeOuterHeaderCreation, {}, {}};
  ByteWriter w(ie.value);
  w.u16(0x0200);
  w.u32(teid);
  w.raw(gnb.view());
  w.u8(qfi & 0x3f);
  return ie;
}

struct OuterHeaderCreation {
  uint32_t teid = 0;
  Ipv6Address gnb;
  uint8_t qfi = 0;
};

inline std::optional<OuterHeaderCreation> outer_header_creation_gtpu_v6(const Ie& ie) {
  if (ie.value.size() != 23) return std::nullopt;
  ByteReader r(ie.value);
  if (r.u16() != 0x0200) return std::nullopt;
  OuterHeaderCreation o;
  o.teid = r.u32();
  o.gnb = Ipv6Address::from_view(r.raw(16));
  o.qfi = r.u8() & 0x3f;
  return o;
}

inline std::optional<uint8_t> as_u8(const Ie& ie) {
  if (ie.value.size() != 1) return std::nullopt;
  return ie.value[0];
}

inline std::optional<uint16_t> as_u16(const Ie& ie) {
  if (ie.value.size() != 2) return std::nullopt;
  return static_cast<uint16_t>(ie.value[0] << 8 | ie.value[1]);
}

inline std::optional<uint32_t> as_u32(const Ie& ie) {
  if (ie.value.size() != 4) return std::nullopt;
  ByteReader r(ie.value);
  return r.u32();
}

}  // namespace srvsim::pfcp

#endif  // SRVSIM_PFCP_CODEC_HPP_
