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

#ifndef SRVSIM_BEHAVIORS_HPP_
#define SRVSIM_BEHAVIORS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srvsim/address.hpp"
#include "srvsim/bytes.hpp"
#include "srvsim/result.hpp"
#include "srvsim/sid.hpp"
#include "srvsim/steering.hpp"
#include "srvsim/wire/stack.hpp"

namespace srvsim {

// SRv6 endpoint behaviors bound to SID prefixes (RFC 8986 / RFC 9433 names).
enum class BehaviorKind {
  End,         // plain segment advance
  EndMGtp6D,   // GTP-U -> SRv6 mapping (uplink gateway)
  EndMGtp6E,   // SRv6 -> GTP-U re-encapsulation (downlink gateway)
  EndDt4,      // decap and deliver into an IPv4 data network
  EndDt6,      // decap and deliver into an IPv6 data network
};

inline const char* to_string(BehaviorKind k) {
  switch (k) {
    case BehaviorKind::End: return "End";
    case BehaviorKind::EndMGtp6D: return "End.M.GTP6.D";
    case BehaviorKind::EndMGtp6E: return "End.M.GTP6.E";
    case BehaviorKind::EndDt4: return "End.DT4";
    case BehaviorKind::EndDt6: return "End.DT6";
  }
  return "?";
}

struct BehaviorBinding {
  Prefix sid_prefix;
  BehaviorKind kind = BehaviorKind::End;
};

enum class DropReason {
  NoSrh,
  SegmentsLeftZero,
  BadSegmentsLeft,
  NoMatchingRule,
  NotGtpu,
  NoAttachedHost,
  MalformedPacket,
  BadChecksum,
  HopLimitExceeded,
  NoRoute,
  NoBinding,
  UnknownSession,
  UnknownTeid,
};

inline const char* to_string(DropReason r) {
  switch (r) {
    case DropReason::NoSrh: return "NoSrh";
    case DropReason::SegmentsLeftZero: return "SegmentsLeftZero";
    case DropReason::BadSegmentsLeft: return "BadSegmentsLeft";
    case DropReason::NoMatchingRule: return "NoMatchingRule";
    case DropReason::NotGtpu: return "NotGtpu";
    case DropReason::NoAttachedHost: return "NoAttachedHost";
    case DropReason::MalformedPacket: return "MalformedPacket";
    case DropReason::BadChecksum: return "BadChecksum";
    case DropReason::HopLimitExceeded: return "HopLimitExceeded";
    case DropReason::NoRoute: return "NoRoute";
    case DropReason::NoBinding: return "NoBinding";
    case DropReason::UnknownSession: return "UnknownSession";
    case DropReason::UnknownTeid: return "UnknownTeid";
  }
  return "?";
}

// Outcome of running a behavior on one packet: forward it, drop it with a
// recorded reason, or hand the inner PDU to an attached host.
class ForwardDecision {
 public:
  enum class Kind { Forward, Drop, LocalDeliver };

  static ForwardDecision forward(Bytes packet, Ipv6Address next_dst) {
    ForwardDecision d;
    d.kind_ = Kind::Forward;
    d.packet_ = std::move(packet);
    d.next_dst_ = next_dst;
    return d;
  }
  static ForwardDecision drop(DropReason reason) {
    ForwardDecision d;
    d.kind_ = Kind::Drop;
    d.reason_ = reason;
    return d;
  }
  static ForwardDecision deliver(std::string host, Bytes inner) {
    ForwardDecision d;
    d.kind_ = Kind::LocalDeliver;
    d.host_ = std::move(host);
    d.packet_ = std::move(inner);
    return d;
  }

  Kind kind() const { return kind_; }
  bool is_forward() const { return kind_ == Kind::Forward; }
  bool is_drop() const { return kind_ == Kind::Drop; }
  bool is_deliver() const { return kind_ == Kind::LocalDeliver; }

  const Bytes& packet() const { return packet_; }
  Bytes&& take_packet() { return std::move(packet_); }
  const Ipv6Address& next_dst() const { return next_dst_; }
  DropReason reason() const { return reason_; }
  const std::string& host() const { return host_; }

 private:
  Kind kind_ = Kind::Drop;
  Bytes packet_;
  Ipv6Address next_dst_;
  DropReason reason_ = DropReason::MalformedPacket;
  std::string host_;
};

// Hosts reachable behind a DN gateway, looked up by inner destination.
class HostDirectory {
 public:
  void add(std::string host, std::vector<Ipv6Address> addrs) {
    hosts_.emplace_back(std::move(host), std::move(addrs));
  }
  std::optional<std::string> find(const Ipv6Address& addr) const {
    for (const auto& [host, addrs] : hosts_) {
      for (const auto& a : addrs) {
        if (a == addr) return host;
      }
    }
    return std::nullopt;
  }
  bool empty() const { return hosts_.empty(); }

 private:
  std::vector<std::pair<std::string, std::vector<Ipv6Address>>> hosts_;
};

enum class EncapsError { EmptyPath };

// SR encapsulation at a source node (H.Encaps, RFC 8986 §5.1): wraps the
// inner PDU in a fresh outer IPv6 (+SRH). The SRH is omitted only for a
// single-segment path, where plain IPv6-in-IPv6 suffices.
inline Result<Bytes, EncapsError> h_encaps(const wire::InnerPdu& inner,
                                           const SegmentList& path,
                                           const Ipv6Address& src,
                                           uint8_t hop_limit = wire::kDefaultHopLimit) {
  if (path.empty()) return EncapsError::EmptyPath;
  uint8_t inner_proto = inner.ip_version == 6 ? wire::kProtoIpv6 : wire::kProtoIpv4;
  wire::Ipv6Header outer;
  outer.hop_limit = hop_limit;
  outer.src = src;
  outer.dst = path.front();
  if (path.size() == 1) {
    outer.next_header = inner_proto;
    return wire::serialize_ipv6(outer, inner.bytes).value();
  }
  wire::SegmentRoutingHeader srh;
  srh.next_header = inner_proto;
  srh.segments_left = static_cast<uint8_t>(path.size() - 1);
  srh.segments.assign(path.rbegin(), path.rend());  // wire order reverses path order
  Bytes srh_bytes = wire::serialize_srh(srh).value();
  Bytes payload;
  payload.reserve(srh_bytes.size() + inner.bytes.size());
  payload.insert(payload.end(), srh_bytes.begin(), srh_bytes.end());
  payload.insert(payload.end(), inner.bytes.begin(), inner.bytes.end());
  outer.next_header = wire::kProtoRouting;
  return wire::serialize_ipv6(outer, payload).value();
}

// Plain End: advance to the next segment. Touches nothing but the
// destination address and Segments Left.
inline ForwardDecision behavior_end(ByteView packet, const BehaviorBinding&) {
  auto ip = wire::parse_ipv6(packet);
  if (!ip.ok()) return ForwardDecision::drop(DropReason::MalformedPacket);
  if (ip->header.next_header != wire::kProtoRouting) {
    return ForwardDecision::drop(DropReason::NoSrh);
  }
  auto srh = wire::parse_srh(ip->payload);
  if (!srh.ok()) return ForwardDecision::drop(DropReason::MalformedPacket);
  if (srh->header.segments_left == 0) {
    return ForwardDecision::drop(DropReason::SegmentsLeftZero);
  }
  uint8_t sl = static_cast<uint8_t>(srh->header.segments_left - 1);
  const Ipv6Address& next = srh->header.segments[sl];
  Bytes out(packet.begin(), packet.end());
  out[wire::kIpv6HeaderSize + 3] = sl;  // SRH segments-left octet
  const auto& dst = next.bytes();
  std::copy(dst.begin(), dst.end(), out.begin() + 24);  // IPv6 dst field
  return ForwardDecision::forward(std::move(out), next);
}

// End.M.GTP6.D: strip the GTP-U encapsulation from the gNB, classify by
// (TEID, QFI, inner source), and re-encapsulate the user PDU into the
// matched segment list.
inline ForwardDecision behavior_gtp6_d(ByteView packet, const BehaviorBinding&,
                                       const Ipv6Address& sr_source,
                                       const steering::TableSnapshot& rules) {
  auto view = wire::parse_gtpu_packet(packet);
  if (!view.ok()) {
    return ForwardDecision::drop(view.error() == wire::StackError::BadChecksum
                                     ? DropReason::BadChecksum
                                     : DropReason::NotGtpu);
  }
  if (view->gtpu.message_type != wire::kGtpuMsgGpdu) {
    return ForwardDecision::drop(DropReason::NotGtpu);
  }
  auto inner = wire::InnerPdu::from_bytes(view->inner);
  if (!inner) return ForwardDecision::drop(DropReason::MalformedPacket);
  std::optional<uint8_t> qfi;
  if (auto psc = view->gtpu.pdu_session_container()) qfi = psc->qfi;
  Ipv6Address inner_src;
  if (inner->ip_version == 6) {
    if (auto in6 = wire::parse_ipv6(inner->bytes); in6.ok()) inner_src = in6->header.src;
  }
  auto rule = rules.classify_uplink(view->gtpu.teid, qfi, inner_src);
  if (!rule.ok()) return ForwardDecision::drop(DropReason::NoMatchingRule);
  auto encapsulated = h_encaps(*inner, rule.value()->action, sr_source);
  if (!encapsulated.ok()) return ForwardDecision::drop(DropReason::NoMatchingRule);
  return ForwardDecision::forward(std::move(encapsulated).value(),
                                  rule.value()->action.front());
}

// End.M.GTP6.E: the GTP6.E SID is the penultimate segment; segments[0] in
// wire order is the gNB's GTP-U address. TEID and QFI travel in the SID's
// low-order argument bits.
inline ForwardDecision behavior_gtp6_e(ByteView packet, const BehaviorBinding&,
                                       const Ipv6Address& gateway_src) {
  auto ip = wire::parse_ipv6(packet);
  if (!ip.ok()) return ForwardDecision::drop(DropReason::MalformedPacket);
  if (ip->header.next_header != wire::kProtoRouting) {
    return ForwardDecision::drop(DropReason::NoSrh);
  }
  auto srh = wire::parse_srh(ip->payload);
  if (!srh.ok()) return ForwardDecision::drop(DropReason::MalformedPacket);
  if (srh->header.segments_left != 1) {
    return ForwardDecision::drop(DropReason::BadSegmentsLeft);
  }
  Gtp6eArgs args = decode_gtp6e_sid(ip->header.dst);
  auto inner = wire::InnerPdu::from_bytes(srh->payload);
  if (!inner) return ForwardDecision::drop(DropReason::MalformedPacket);
  const Ipv6Address& gnb = srh->header.segments[0];
  wire::GtpuHeader gtpu;
  gtpu.message_type = wire::kGtpuMsgGpdu;
  gtpu.teid = args.teid;
  gtpu.extensions.emplace_back(
      wire::PduSessionContainer{wire::kPduTypeDownlink, args.qfi});
  Bytes out = wire::make_gtpu_packet(gateway_src, gnb, gtpu, inner->bytes);
  return ForwardDecision::forward(std::move(out), gnb);
}

// End.DT4/DT6: decapsulate at the DN-side gateway and deliver the user PDU
// to the attached host owning the inner destination.
inline ForwardDecision behavior_dt(ByteView packet, const BehaviorBinding& binding,
                                   const HostDirectory& hosts) {
  auto ip = wire::parse_ipv6(packet);
  if (!ip.ok()) return ForwardDecision::drop(DropReason::MalformedPacket);
  uint8_t inner_proto = ip->header.next_header;
  ByteView inner_bytes = ip->payload;
  if (inner_proto == wire::kProtoRouting) {
    auto srh = wire::parse_srh(ip->payload);
    if (!srh.ok()) return ForwardDecision::drop(DropReason::MalformedPacket);
    if (srh->header.segments_left != 0) {
      return ForwardDecision::drop(DropReason::BadSegmentsLeft);
    }
    inner_proto = srh->header.next_header;
    inner_bytes = srh->payload;
  }
  uint8_t want = binding.kind == BehaviorKind::EndDt4 ? wire::kProtoIpv4 : wire::kProtoIpv6;
  if (inner_proto != want) return ForwardDecision::drop(DropReason::MalformedPacket);
  Ipv6Address inner_dst;
  if (inner_proto == wire::kProtoIpv6) {
    auto in6 = wire::parse_ipv6(inner_bytes);
    if (!in6.ok()) return ForwardDecision::drop(DropReason::MalformedPacket);
    inner_dst = in6->header.dst;
  } else {
    return ForwardDecision::drop(DropReason::MalformedPacket);  // no IPv4 DNs modeled
  }
  auto host = hosts.find(inner_dst);
  if (!host) return ForwardDecision::drop(DropReason::NoAttachedHost);
  return ForwardDecision::deliver(*host, Bytes(inner_bytes.begin(), inner_bytes.end()));
}

}  // namespace srvsim

#endif  // SRVSIM_BEHAVIORS_HPP_
