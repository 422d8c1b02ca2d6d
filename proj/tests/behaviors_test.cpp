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

#include <gtest/gtest.h>

#include <random>

#include "srvsim/behaviors.hpp"
#include "srvsim/sid.hpp"
#include "srvsim/steering.hpp"
#include "srvsim/wire/stack.hpp"

namespace srvsim {
namespace {

using steering::RuleTable;
using steering::RuleUpdate;
using steering::UplinkRule;

Ipv6Address addr(const std::string& s) { return *Ipv6Address::parse(s); }
Prefix prefix(const std::string& s) { return *Prefix::parse(s); }

// ---------------------------------------------------------------------------
// GTP6.E SID argument encoding

TEST(Gtp6eSid, BitConcatenation) {
  auto sid = encode_gtp6e_sid(prefix("2001:db8:e::/64"), 1, 10);
  ASSERT_TRUE(sid.ok());
  EXPECT_EQ(sid.value(), addr("2001:db8:e::28:0:1"));
  EXPECT_EQ(sid->low64() & 0xffffffffffull, 0x28'0000'0001ull);
}

TEST(Gtp6eSid, ZeroArgsLeavePrefixUntouched) {
  auto sid = encode_gtp6e_sid(prefix("2001:db8:e::/64"), 0, 0);
  ASSERT_TRUE(sid.ok());
  EXPECT_EQ(sid.value(), addr("2001:db8:e::"));
}

TEST(Gtp6eSid, PrefixTooLong) {
  EXPECT_EQ(encode_gtp6e_sid(prefix("2001:db8::/89"), 1, 1).error(),
            SidError::PrefixTooLong);
  EXPECT_TRUE(encode_gtp6e_sid(prefix("2001:db8::/88"), 1, 1).ok());
}

TEST(Gtp6eSid, SidStructureLeavesFortyArgumentBits) {
  Sid sid{addr("2001:db8:100:e::"), 64, 24};
  EXPECT_EQ(sid.argument_offset(), 88);
  EXPECT_EQ(128 - sid.argument_offset(), kGtp6eArgBits);
}

TEST(Gtp6eSid, RandomRoundTrip) {
  std::mt19937 rng(2024);
  Prefix p = prefix("2001:db8:100:e::/64");
  for (int i = 0; i < 1000; ++i) {
    uint32_t teid = rng();
    uint8_t qfi = static_cast<uint8_t>(rng() % 64);
    auto sid = encode_gtp6e_sid(p, teid, qfi);
    ASSERT_TRUE(sid.ok());
    Gtp6eArgs args = decode_gtp6e_sid(sid.value());
    EXPECT_EQ(args.teid, teid);
    EXPECT_EQ(args.qfi, qfi);
    EXPECT_TRUE(p.contains(sid.value()));
  }
}

// ---------------------------------------------------------------------------
// End

Bytes make_srh_packet(const Ipv6Address& src, const SegmentList& path,
                      ByteView inner, uint8_t segments_left) {
  wire::SegmentRoutingHeader srh;
  srh.next_header = wire::kProtoIpv6;
  srh.segments.assign(path.rbegin(), path.rend());
  srh.segments_left = segments_left;
  Bytes payload = wire::serialize_srh(srh).value();
  payload.insert(payload.end(), inner.begin(), inner.end());
  wire::Ipv6Header outer;
  outer.next_header = wire::kProtoRouting;
  outer.src = src;
  outer.dst = path[path.size() - 1 - segments_left];
  return wire::serialize_ipv6(outer, payload).value();
}

TEST(BehaviorEnd, AdvancesToNextSegment) {
  // Wire order [A,B,C]: SL=2 means current dst is C; End moves to B.
  Ipv6Address a = addr("2001:db8::a"), b = addr("2001:db8::b"), c = addr("2001:db8::c");
  SegmentList path = {c, b, a};  // path order; wire order is [a, b, c]
  Bytes user = wire::make_user_packet(addr("::1"), addr("::2"), to_bytes("x"));
  Bytes packet = make_srh_packet(addr("2001:db8::99"), path, user, 2);
  BehaviorBinding binding{prefix("2001:db8::c/128"), BehaviorKind::End};

  auto d = behavior_end(packet, binding);
  ASSERT_TRUE(d.is_forward());
  EXPECT_EQ(d.next_dst(), b);
  auto ip = wire::parse_ipv6(d.packet());
  EXPECT_EQ(ip->header.dst, b);
  auto srh = wire::parse_srh(ip->payload);
  EXPECT_EQ(srh->header.segments_left, 1);

  // Everything except dst (bytes 24..39) and segments-left (byte 43) intact.
  ASSERT_EQ(d.packet().size(), packet.size());
  for (size_t i = 0; i < packet.size(); ++i) {
    if ((i >= 24 && i < 40) || i == 43) continue;
    EXPECT_EQ(d.packet()[i], packet[i]) << "byte " << i;
  }
}

TEST(BehaviorEnd, LastSegmentAndExhaustion) {
  Ipv6Address a = addr("2001:db8::a"), b = addr("2001:db8::b");
  SegmentList path = {b, a};
  Bytes user = wire::make_user_packet(addr("::1"), addr("::2"), to_bytes("x"));
  Bytes packet = make_srh_packet(addr("2001:db8::99"), path, user, 1);
  BehaviorBinding binding{prefix("2001:db8::b/128"), BehaviorKind::End};

  auto d = behavior_end(packet, binding);
  ASSERT_TRUE(d.is_forward());
  EXPECT_EQ(d.next_dst(), a);

  auto exhausted = behavior_end(d.packet(), binding);
  ASSERT_TRUE(exhausted.is_drop());
  EXPECT_EQ(exhausted.reason(), DropReason::SegmentsLeftZero);
}

TEST(BehaviorEnd, RequiresSrh) {
  Bytes plain = wire::make_user_packet(addr("::1"), addr("2001:db8::b"), to_bytes("x"));
  auto d = behavior_end(plain, BehaviorBinding{});
  ASSERT_TRUE(d.is_drop());
  EXPECT_EQ(d.reason(), DropReason::NoSrh);
}

// ---------------------------------------------------------------------------
// End.M.GTP6.D

struct UplinkFixture {
  Ipv6Address gnb = addr("2001:db8:a1::1");
  Ipv6Address gtp6d = addr("2001:db8:100::d");
  Ipv6Address sr_source = addr("2001:db8:100::1");
  Ipv6Address t1 = addr("2001:db8:101::e");
  Ipv6Address dt6 = addr("2001:db8:201::d6");
  BehaviorBinding binding{prefix("2001:db8:100::d/128"), BehaviorKind::EndMGtp6D};
  RuleTable table;

  UplinkFixture() {
    RuleUpdate update;
    update.add_uplink.push_back(UplinkRule{1, 10, {100, 9, std::nullopt}, {t1, dt6}});
    update.add_uplink.push_back(UplinkRule{2, 10, {200, std::nullopt, std::nullopt}, {dt6}});
    EXPECT_TRUE(table.apply_update(update).ok());
  }

  Bytes uplink_packet(uint32_t teid, uint8_t qfi, ByteView payload) const {
    Bytes user = wire::make_user_packet(addr("2001:db8:1::b"), addr("2001:db8:5::5"), payload);
    wire::GtpuHeader gtpu;
    gtpu.teid = teid;
    gtpu.extensions.emplace_back(wire::PduSessionContainer{wire::kPduTypeUplink, qfi});
    return wire::make_gtpu_packet(gnb, gtp6d, gtpu, user);
  }
};

TEST(BehaviorGtp6D, MapsIntoSegmentList) {
  UplinkFixture f;
  Bytes packet = f.uplink_packet(100, 9, to_bytes("hello"));
  auto d = behavior_gtp6_d(packet, f.binding, f.sr_source, f.table.snapshot());
  ASSERT_TRUE(d.is_forward());
  EXPECT_EQ(d.next_dst(), f.t1);

  auto ip = wire::parse_ipv6(d.packet());
  ASSERT_TRUE(ip.ok());
  EXPECT_EQ(ip->header.src, f.sr_source);
  EXPECT_EQ(ip->header.dst, f.t1);
  EXPECT_EQ(ip->header.next_header, wire::kProtoRouting);
  auto srh = wire::parse_srh(ip->payload);
  ASSERT_TRUE(srh.ok());
  EXPECT_EQ(srh->header.segments_left, 1);
  ASSERT_EQ(srh->header.segments.size(), 2u);
  EXPECT_EQ(srh->header.segments[0], f.dt6);  // wire order: final first
  EXPECT_EQ(srh->header.segments[1], f.t1);

  // Inner PDU preserved bit-exactly.
  Bytes user = wire::make_user_packet(addr("2001:db8:1::b"), addr("2001:db8:5::5"),
                                      to_bytes("hello"));
  EXPECT_EQ(Bytes(srh->payload.begin(), srh->payload.end()), user);
}

TEST(BehaviorGtp6D, SingleSegmentPathOmitsSrh) {
  UplinkFixture f;
  Bytes packet = f.uplink_packet(200, 9, to_bytes("hi"));
  auto d = behavior_gtp6_d(packet, f.binding, f.sr_source, f.table.snapshot());
  ASSERT_TRUE(d.is_forward());
  EXPECT_EQ(d.next_dst(), f.dt6);
  auto ip = wire::parse_ipv6(d.packet());
  EXPECT_EQ(ip->header.next_header, wire::kProtoIpv6);
  EXPECT_EQ(ip->header.dst, f.dt6);
}

TEST(BehaviorGtp6D, UnknownTeidDrops) {
  UplinkFixture f;
  Bytes packet = f.uplink_packet(999, 9, to_bytes("x"));
  auto d = behavior_gtp6_d(packet, f.binding, f.sr_source, f.table.snapshot());
  ASSERT_TRUE(d.is_drop());
  EXPECT_EQ(d.reason(), DropReason::NoMatchingRule);
}

TEST(BehaviorGtp6D, NonGtpuDrops) {
  UplinkFixture f;
  Bytes plain = wire::make_user_packet(addr("::1"), f.gtp6d, to_bytes("x"));
  auto d = behavior_gtp6_d(plain, f.binding, f.sr_source, f.table.snapshot());
  ASSERT_TRUE(d.is_drop());
  EXPECT_EQ(d.reason(), DropReason::NotGtpu);
}

// ---------------------------------------------------------------------------
// End.M.GTP6.E

TEST(BehaviorGtp6E, RebuildsGtpuFromSidArgs) {
  Ipv6Address gnb = addr("2001:db8:a1::1");
  Ipv6Address gw = addr("2001:db8:100::1");
  auto sid = encode_gtp6e_sid(prefix("2001:db8:100:e::/64"), 1, 10).value();
  EXPECT_EQ(sid.low64() & 0xffffffffffull, 0x28'0000'0001ull);

  Bytes user = wire::make_user_packet(addr("2001:db8:5::5"), addr("2001:db8:1::b"),
                                      to_bytes("pong"));
  // Wire order [gnb, sid], SL=1: dst is currently the GTP6.E SID.
  Bytes packet = make_srh_packet(addr("2001:db8:201::1"), {sid, gnb}, user, 1);
  BehaviorBinding binding{prefix("2001:db8:100:e::/64"), BehaviorKind::EndMGtp6E};

  auto d = behavior_gtp6_e(packet, binding, gw);
  ASSERT_TRUE(d.is_forward());
  EXPECT_EQ(d.next_dst(), gnb);
  auto view = wire::parse_gtpu_packet(d.packet());
  ASSERT_TRUE(view.ok());
  EXPECT_EQ(view->outer.src, gw);
  EXPECT_EQ(view->outer.dst, gnb);
  EXPECT_EQ(view->gtpu.teid, 1u);
  auto psc = view->gtpu.pdu_session_container();
  ASSERT_TRUE(psc.has_value());
  EXPECT_EQ(psc->qfi, 10);
  EXPECT_EQ(psc->pdu_type, wire::kPduTypeDownlink);
  EXPECT_EQ(Bytes(view->inner.begin(), view->inner.end()), user);
}

TEST(BehaviorGtp6E, RejectsWrongSegmentsLeft) {
  auto sid = encode_gtp6e_sid(prefix("2001:db8:100:e::/64"), 7, 3).value();
  Ipv6Address gnb = addr("2001:db8:a1::1");
  Bytes user = wire::make_user_packet(addr("::1"), addr("::2"), to_bytes("x"));
  Bytes packet = make_srh_packet(addr("::9"), {addr("2001:db8::1"), sid, gnb}, user, 2);
  BehaviorBinding binding{prefix("2001:db8:100:e::/64"), BehaviorKind::EndMGtp6E};
  auto d = behavior_gtp6_e(packet, binding, addr("2001:db8:100::1"));
  ASSERT_TRUE(d.is_drop());
  EXPECT_EQ(d.reason(), DropReason::BadSegmentsLeft);

  Bytes plain = wire::make_user_packet(addr("::1"), sid, to_bytes("x"));
  auto no_srh = behavior_gtp6_e(plain, binding, addr("2001:db8:100::1"));
  ASSERT_TRUE(no_srh.is_drop());
  EXPECT_EQ(no_srh.reason(), DropReason::NoSrh);
}

// ---------------------------------------------------------------------------
// End.DT

TEST(BehaviorDt, DeliversToAttachedHost) {
  HostDirectory hosts;
  hosts.add("s1", {addr("2001:db8:301::10"), addr("2001:db8:5::5")});
  Bytes user = wire::make_user_packet(addr("2001:db8:1::b"), addr("2001:db8:5::5"),
                                      to_bytes("data"));
  wire::InnerPdu inner{6, user};
  Ipv6Address dt6 = addr("2001:db8:201::d6");
  Bytes packet = h_encaps(inner, {addr("2001:db8:101::e"), dt6}, addr("::9")).value();
  BehaviorBinding binding{prefix("2001:db8:201::d6/128"), BehaviorKind::EndDt6};

  // SL=1 on arrival: not yet the last segment.
  auto early = behavior_dt(packet, binding, hosts);
  ASSERT_TRUE(early.is_drop());
  EXPECT_EQ(early.reason(), DropReason::BadSegmentsLeft);

  auto advanced = behavior_end(packet, binding);
  ASSERT_TRUE(advanced.is_forward());
  auto d = behavior_dt(advanced.packet(), binding, hosts);
  ASSERT_TRUE(d.is_deliver());
  EXPECT_EQ(d.host(), "s1");
  EXPECT_EQ(d.packet(), user);
}

TEST(BehaviorDt, SingleSegmentEncapsWithoutSrh) {
  HostDirectory hosts;
  hosts.add("s0", {addr("2001:db8:5::5")});
  Bytes user = wire::make_user_packet(addr("2001:db8:1::b"), addr("2001:db8:5::5"),
                                      to_bytes("d"));
  Bytes packet = h_encaps(wire::InnerPdu{6, user}, {addr("2001:db8:200::d6")},
                          addr("::9")).value();
  BehaviorBinding binding{prefix("2001:db8:200::d6/128"), BehaviorKind::EndDt6};
  auto d = behavior_dt(packet, binding, hosts);
  ASSERT_TRUE(d.is_deliver());
  EXPECT_EQ(d.host(), "s0");
  EXPECT_EQ(d.packet(), user);
}

TEST(BehaviorDt, UnattachedDestinationDrops) {
  HostDirectory hosts;
  hosts.add("s1", {addr("2001:db8:301::10")});
  Bytes user = wire::make_user_packet(addr("2001:db8:1::b"), addr("2001:db8:5::5"),
                                      to_bytes("d"));
  Bytes packet = h_encaps(wire::InnerPdu{6, user}, {addr("2001:db8:201::d6")},
                          addr("::9")).value();
  BehaviorBinding binding{prefix("2001:db8:201::d6/128"), BehaviorKind::EndDt6};
  auto d = behavior_dt(packet, binding, hosts);
  ASSERT_TRUE(d.is_drop());
  EXPECT_EQ(d.reason(), DropReason::NoAttachedHost);
}

// ---------------------------------------------------------------------------
// H.Encaps

TEST(HEncaps, WireOrderReversesPathOrder) {
  auto sid = encode_gtp6e_sid(prefix("2001:db8:100:e::/64"), 1, 10).value();
  Ipv6Address gnb = addr("2001:db8:a1::1");
  Bytes user = wire::make_user_packet(addr("::1"), addr("::2"), to_bytes("x"));
  auto packet = h_encaps(wire::InnerPdu{6, user}, {sid, gnb}, addr("::9"));
  ASSERT_TRUE(packet.ok());
  auto ip = wire::parse_ipv6(packet.value());
  EXPECT_EQ(ip->header.dst, sid);
  auto srh = wire::parse_srh(ip->payload);
  EXPECT_EQ(srh->header.segments_left, 1);
  EXPECT_EQ(srh->header.segments[0], gnb);
  EXPECT_EQ(srh->header.segments[1], sid);
}

TEST(HEncaps, EmptyPathRejected) {
  Bytes user = wire::make_user_packet(addr("::1"), addr("::2"), to_bytes("x"));
  EXPECT_EQ(h_encaps(wire::InnerPdu{6, user}, {}, addr("::9")).error(),
            EncapsError::EmptyPath);
}

// encap ∘ (behavior_end × k-1) ∘ decap preserves the inner bytes for any
// k-segment path.
TEST(HEncaps, EndChainPreservesInnerBytes) {
  std::mt19937 rng(31337);
  HostDirectory hosts;
  hosts.add("sink", {addr("2001:db8:5::5")});
  BehaviorBinding end_binding{prefix("::/0"), BehaviorKind::End};
  BehaviorBinding dt_binding{prefix("::/0"), BehaviorKind::EndDt6};
  for (int trial = 0; trial < 200; ++trial) {
    size_t k = 1 + rng() % 6;
    SegmentList path;
    for (size_t i = 0; i < k; ++i) {
      std::array<uint8_t, 16> a{};
      for (auto& x : a) x = static_cast<uint8_t>(rng());
      path.push_back(Ipv6Address(a));
    }
    Bytes payload(rng() % 100, 0);
    for (auto& b : payload) b = static_cast<uint8_t>(rng());
    Bytes user = wire::make_user_packet(addr("2001:db8:1::b"), addr("2001:db8:5::5"),
                                        payload);
    Bytes packet = h_encaps(wire::InnerPdu{6, user}, path, addr("::9")).value();
    for (size_t hop = 0; hop + 1 < k; ++hop) {
      auto d = behavior_end(packet, end_binding);
      ASSERT_TRUE(d.is_forward());
      EXPECT_EQ(d.next_dst(), path[hop + 1]);
      packet = d.take_packet();
    }
    auto final = behavior_dt(packet, dt_binding, hosts);
    ASSERT_TRUE(final.is_deliver());
    EXPECT_EQ(final.packet(), user);
  }
}

// GTP6.D at the access gateway composed with the downlink reverse
// (H.Encaps at the DN gateway + GTP6.E back at the access gateway)
// reconstructs a GTP-U packet carrying the session's downlink teid/qfi.
TEST(Composability, UplinkThenDownlinkReverse) {
  UplinkFixture f;
  Bytes uplink = f.uplink_packet(100, 9, to_bytes("ping"));
  auto up = behavior_gtp6_d(uplink, f.binding, f.sr_source, f.table.snapshot());
  ASSERT_TRUE(up.is_forward());

  // Downlink: DN gateway encapsulates toward GTP6.E SID then the gNB.
  uint32_t downlink_teid = 1100;
  uint8_t qfi = 9;
  auto sid = encode_gtp6e_sid(prefix("2001:db8:100:e::/64"), downlink_teid, qfi).value();
  Bytes reply = wire::make_user_packet(addr("2001:db8:5::5"), addr("2001:db8:1::b"),
                                       to_bytes("pong"));
  Bytes down = h_encaps(wire::InnerPdu{6, reply}, {sid, f.gnb},
                        addr("2001:db8:201::1")).value();
  BehaviorBinding e_binding{prefix("2001:db8:100:e::/64"), BehaviorKind::EndMGtp6E};
  auto d = behavior_gtp6_e(down, e_binding, f.sr_source);
  ASSERT_TRUE(d.is_forward());
  auto view = wire::parse_gtpu_packet(d.packet());
  ASSERT_TRUE(view.ok());
  EXPECT_EQ(view->outer.dst, f.gnb);
  EXPECT_EQ(view->gtpu.teid, downlink_teid);
  EXPECT_EQ(view->gtpu.pdu_session_container()->qfi, qfi);
  EXPECT_EQ(Bytes(view->inner.begin(), view->inner.end()), reply);
}

}  // namespace
}  // namespace srvsim
