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

#ifndef SRVSIM_WIRE_STACK_HPP_
#define SRVSIM_WIRE_STACK_HPP_

#include <cstdint>
#include <optional>

#include "srvsim/address.hpp"
#include "srvsim/bytes.hpp"
#include "srvsim/result.hpp"
#include "srvsim/wire/gtpu.hpp"
#include "srvsim/wire/ipv6.hpp"
#include "srvsim/wire/srh.hpp"
#include "srvsim/wire/udp.hpp"

namespace srvsim::wire {

// An opaque user PDU. The data plane transports it bit-exactly; only the
// version nibble and the addresses are ever inspected.
struct InnerPdu {
  uint8_t ip_version = 6;
  Bytes bytes;

  static std::optional<InnerPdu> from_bytes(ByteView data) {
    if (data.empty()) return std::nullopt;
    uint8_t v = data[0] >> 4;
    if (v != 4 && v != 6) return std::nullopt;
    return InnerPdu{v, Bytes(data.begin(), data.end())};
  }

  bool operator==(const InnerPdu&) const = default;
};

// Builds a minimal IPv6 user packet around an application payload. The
// payload rides as protocol 253 (experimentation) since no L4 semantics are
// needed.
inline Bytes make_user_packet(const Ipv6Address& src, const Ipv6Address& dst,
                              ByteView app_payload) {
  Ipv6Header h;
  h.next_header = kProtoExperimental;
  h.src = src;
  h.dst = dst;
  return serialize_ipv6(h, app_payload).value();
}

// A fully parsed GTP-U encapsulation: IPv6 / UDP:2152 / GTP-U / inner.
struct GtpuPacketView {
  Ipv6Header outer;
  UdpHeader udp;
  GtpuHeader gtpu;
  ByteView inner;
};

enum class StackError {
  NotGtpu,
  Malformed,
  BadChecksum,
};

inline Result<GtpuPacketView, StackError> parse_gtpu_packet(ByteView packet) {
  auto ip = parse_ipv6(packet);
  if (!ip.ok()) return StackError::Malformed;
  if (ip->header.next_header != kProtoUdp) return StackError::NotGtpu;
  auto udp = parse_udp(ip->payload);
  if (!udp.ok()) return StackError::Malformed;
  if (udp->header.dst_port != kGtpuUdpPort) return StackError::NotGtpu;
  if (!verify_udp_checksum(ip->header.src, ip->header.dst, ip->payload)) {
    return StackError::BadChecksum;
  }
  auto gtpu = parse_gtpu(udp->payload);
  if (!gtpu.ok()) return StackError::NotGtpu;
  return GtpuPacketView{ip->header, udp->header, gtpu->header, gtpu->payload};
}

// Builds IPv6 / UDP:2152 / GTP-U around an inner PDU.
inline Bytes make_gtpu_packet(const Ipv6Address& src, const Ipv6Address& dst,
                              const GtpuHeader& gtpu, ByteView inner,
                              uint8_t hop_limit = kDefaultHopLimit) {
  Bytes gtpu_bytes = serialize_gtpu(gtpu, inner).value();
  Bytes udp = serialize_udp(src, dst, kGtpuUdpPort, kGtpuUdpPort, gtpu_bytes).value();
  Ipv6Header ip;
  ip.next_header = kProtoUdp;
  ip.hop_limit = hop_limit;
  ip.src = src;
  ip.dst = dst;
  return serialize_ipv6(ip, udp).value();
}

// Per-packet digest carried in trace events: outer addresses, SRH state,
// tunnel ids and the innermost payload hash, whichever of them exist.
struct PacketSummary {
  std::optional<Ipv6Address> outer_src;
  std::optional<Ipv6Address> outer_dst;
  std::optional<uint8_t> segments_left;
  std::optional<uint32_t> teid;
  std::optional<uint8_t> qfi;
  std::optional<Ipv6Address> inner_src;
  std::optional<Ipv6Address> inner_dst;
  std::optional<uint64_t> payload_hash;
};

namespace detail {
inline void summarize_inner(ByteView inner, PacketSummary& s) {
  if (inner.empty()) return;
  uint8_t v = inner[0] >> 4;
  if (v == 6) {
    auto ip = parse_ipv6(inner);
    if (ip.ok()) {
      s.inner_src = ip->header.src;
      s.inner_dst = ip->header.dst;
      s.payload_hash = fnv1a(ip->payload);
      return;
    }
  }
  s.payload_hash = fnv1a(inner);
}
}  // namespace detail

inline PacketSummary summarize_packet(ByteView packet) {
  PacketSummary s;
  auto ip = parse_ipv6(packet);
  if (!ip.ok()) {
    s.payload_hash = fnv1a(packet);
    return s;
  }
  s.outer_src = ip->header.src;
  s.outer_dst = ip->header.dst;
  uint8_t proto = ip->header.next_header;
  ByteView rest = ip->payload;
  if (proto == kProtoRouting) {
    auto srh = parse_srh(rest);
    if (!srh.ok()) return s;
    s.segments_left = srh->header.segments_left;
    proto = srh->header.next_header;
    rest = srh->payload;
  }
  if (proto == kProtoUdp) {
    auto udp = parse_udp(rest);
    if (!udp.ok()) return s;
    if (udp->header.dst_port == kGtpuUdpPort) {
      auto gtpu = parse_gtpu(udp->payload);
      if (!gtpu.ok()) return s;
      s.teid = gtpu->header.teid;
      if (auto psc = gtpu->header.pdu_session_container()) s.qfi = psc->qfi;
      detail::summarize_inner(gtpu->payload, s);
    } else {
      s.payload_hash = fnv1a(udp->payload);
    }
    return s;
  }
  if (proto == kProtoIpv6 || proto == kProtoIpv4) {
    detail::summarize_inner(rest, s);
    return s;
  }
  // The outer header is itself the user packet.
  s.inner_src = ip->header.src;
  s.inner_dst = ip->header.dst;
  s.payload_hash = fnv1a(ip->payload);
  return s;
}

}  // namespace srvsim::wire

#endif  // SRVSIM_WIRE_STACK_HPP_
