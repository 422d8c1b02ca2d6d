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

#include <optional>
#include <random>

#include "srvsim/sid.hpp"
#include "srvsim/steering.hpp"

namespace srvsim::steering {
namespace {

Ipv6Address addr(const std::string& s) { return *Ipv6Address::parse(s); }
Prefix pfx(const std::string& s) { return *Prefix::parse(s); }

SegmentList path(const std::string& a) { return {addr(a)}; }
SegmentList path(const std::string& a, const std::string& b) { return {addr(a), addr(b)}; }

// Brute-force scan oracles, written against the rule definitions alone.
const UplinkRule* oracle_uplink(const std::vector<UplinkRule>& rules, uint32_t teid,
                                std::optional<uint8_t> qfi, const Ipv6Address& src) {
  const UplinkRule* best = nullptr;
  for (const auto& r : rules) {
    bool matches = r.match.teid == teid;
    if (matches && r.match.qfi.has_value()) matches = qfi.has_value() && *qfi == *r.match.qfi;
    if (matches && r.match.inner_src.has_value()) matches = r.match.inner_src->contains(src);
    if (!matches) continue;
    if (best == nullptr) {
      best = &r;
    } else if (r.priority > best->priority) {
      best = &r;
    } else if (r.priority == best->priority && r.id < best->id) {
      best = &r;
    }
  }
  return best;
}

const DownlinkRule* oracle_downlink(const std::vector<DownlinkRule>& rules,
                                    const Ipv6Address& dst) {
  const DownlinkRule* best = nullptr;
  for (const auto& r : rules) {
    if (!r.ue_prefix.contains(dst)) continue;
    if (best == nullptr) {
      best = &r;
    } else if (r.ue_prefix.length > best->ue_prefix.length) {
      best = &r;
    } else if (r.ue_prefix.length == best->ue_prefix.length && r.id < best->id) {
      best = &r;
    }
  }
  return best;
}

TEST(UplinkClassify, ExactTeidMatch) {
  RuleTable table;
  RuleUpdate u;
  u.add_uplink.push_back({1, 0, {100, std::nullopt, std::nullopt}, path("2001:db8::1")});
  ASSERT_TRUE(table.apply_update(u).ok());
  auto hit = table.classify_uplink(100, 9, addr("2001:db8:1::b"));
  ASSERT_TRUE(hit.ok());
  EXPECT_EQ(hit.value()->id, 1u);
  EXPECT_FALSE(table.classify_uplink(101, 9, addr("2001:db8:1::b")).ok());
}

TEST(UplinkClassify, PriorityBeatsGenerality) {
  RuleTable table;
  RuleUpdate u;
  u.add_uplink.push_back({1, 10, {100, 9, std::nullopt}, path("2001:db8::1")});
  u.add_uplink.push_back({2, 1, {100, std::nullopt, std::nullopt}, path("2001:db8::2")});
  ASSERT_TRUE(table.apply_update(u).ok());
  auto hit = table.classify_uplink(100, 9, addr("::1"));
  ASSERT_TRUE(hit.ok());
  EXPECT_EQ(hit.value()->action, path("2001:db8::1"));
  // Without a QFI only the general rule is eligible.
  auto general = table.classify_uplink(100, std::nullopt, addr("::1"));
  ASSERT_TRUE(general.ok());
  EXPECT_EQ(general.value()->action, path("2001:db8::2"));
}

TEST(DownlinkClassify, LongestPrefixWins) {
  RuleTable table;
  RuleUpdate u;
  u.add_downlink.push_back({1, pfx("2001:db8:1::/56"), path("2001:db8:e::1", "2001:db8:a1::1")});
  u.add_downlink.push_back({2, pfx("2001:db8:1::/64"), path("2001:db8:e::2", "2001:db8:a2::1")});
  ASSERT_TRUE(table.apply_update(u).ok());
  auto hit = table.classify_downlink(addr("2001:db8:1::42"));
  ASSERT_TRUE(hit.ok());
  EXPECT_EQ(hit.value()->id, 2u);
}

TEST(DownlinkClassify, DefaultRouteAlwaysMatches) {
  RuleTable table;
  RuleUpdate u;
  u.add_downlink.push_back({1, pfx("::/0"), path("2001:db8:e::1", "2001:db8:a1::1")});
  ASSERT_TRUE(table.apply_update(u).ok());
  EXPECT_TRUE(table.classify_downlink(addr("fe80::1")).ok());
  EXPECT_TRUE(table.classify_downlink(addr("::")).ok());
}

TEST(Update, AddRemoveAndVersioning) {
  RuleTable table;
  EXPECT_EQ(table.version(), 0u);
  RuleUpdate add;
  add.add_uplink.push_back({7, 0, {100, std::nullopt, std::nullopt}, path("2001:db8::1")});
  auto v1 = table.apply_update(add);
  ASSERT_TRUE(v1.ok());
  EXPECT_EQ(v1.value(), 1u);
  EXPECT_TRUE(table.classify_uplink(100, std::nullopt, addr("::1")).ok());

  RuleUpdate remove;
  remove.remove.push_back(7);
  auto v2 = table.apply_update(remove);
  ASSERT_TRUE(v2.ok());
  EXPECT_EQ(v2.value(), 2u);
  EXPECT_FALSE(table.classify_uplink(100, std::nullopt, addr("::1")).ok());

  // Empty update leaves the version untouched.
  auto v3 = table.apply_update(RuleUpdate{});
  ASSERT_TRUE(v3.ok());
  EXPECT_EQ(v3.value(), 2u);
  EXPECT_EQ(table.version(), 2u);
}

TEST(Update, Errors) {
  RuleTable table;
  RuleUpdate bad_remove;
  bad_remove.remove.push_back(99);
  EXPECT_EQ(table.apply_update(bad_remove).error(), UpdateError::UnknownRuleId);

  RuleUpdate short_action;
  short_action.add_downlink.push_back({1, pfx("::/0"), path("2001:db8::1")});
  EXPECT_EQ(table.apply_update(short_action).error(), UpdateError::ShapeViolation);

  table.set_gtp6e_prefixes({pfx("2001:db8:100:e::/64")});
  RuleUpdate wrong_sid;
  wrong_sid.add_downlink.push_back({1, pfx("::/0"), path("2001:db8::1", "2001:db8:a1::1")});
  EXPECT_EQ(table.apply_update(wrong_sid).error(), UpdateError::ShapeViolation);

  RuleUpdate good;
  auto sid = encode_gtp6e_sid(pfx("2001:db8:100:e::/64"), 1, 9).value();
  good.add_downlink.push_back({1, pfx("::/0"), {sid, addr("2001:db8:a1::1")}});
  ASSERT_TRUE(table.apply_update(good).ok());

  RuleUpdate duplicate = good;
  EXPECT_EQ(table.apply_update(duplicate).error(), UpdateError::DuplicateRuleId);

  // A failed update must not bump the version or change content.
  EXPECT_EQ(table.version(), 1u);
  EXPECT_EQ(table.rule_count(), 1u);
}

// Failed batches leave the table bit-identical even when the failing entry
// comes after applicable ones.
TEST(Update, AllOrNothing) {
  RuleTable table;
  RuleUpdate seed;
  seed.add_uplink.push_back({1, 0, {1, std::nullopt, std::nullopt}, path("2001:db8::1")});
  ASSERT_TRUE(table.apply_update(seed).ok());

  RuleUpdate mixed;
  mixed.add_uplink.push_back({2, 0, {2, std::nullopt, std::nullopt}, path("2001:db8::2")});
  mixed.remove.push_back(1);
  mixed.remove.push_back(42);  // unknown: whole batch must fail
  EXPECT_EQ(table.apply_update(mixed).error(), UpdateError::UnknownRuleId);
  EXPECT_EQ(table.version(), 1u);
  EXPECT_TRUE(table.classify_uplink(1, std::nullopt, addr("::1")).ok());
  EXPECT_FALSE(table.classify_uplink(2, std::nullopt, addr("::1")).ok());
}

// A snapshot taken before an update keeps answering from the old table; the
// live table answers from the new one. No interleaving can observe a mix.
TEST(Update, SnapshotsAreAtomic) {
  RuleTable table;
  RuleUpdate u1;
  u1.add_uplink.push_back({1, 0, {100, std::nullopt, std::nullopt}, path("2001:db8::1")});
  u1.add_uplink.push_back({2, 0, {200, std::nullopt, std::nullopt}, path("2001:db8::2")});
  ASSERT_TRUE(table.apply_update(u1).ok());

  TableSnapshot before = table.snapshot();
  RuleUpdate u2;
  u2.remove = {1, 2};
  u2.add_uplink.push_back({3, 0, {100, std::nullopt, std::nullopt}, path("2001:db8::3")});
  ASSERT_TRUE(table.apply_update(u2).ok());
  TableSnapshot after = table.snapshot();

  EXPECT_EQ(before.version(), 1u);
  EXPECT_EQ(after.version(), 2u);
  EXPECT_EQ(before.classify_uplink(100, std::nullopt, addr("::1")).value()->id, 1u);
  EXPECT_TRUE(before.classify_uplink(200, std::nullopt, addr("::1")).ok());
  EXPECT_EQ(after.classify_uplink(100, std::nullopt, addr("::1")).value()->id, 3u);
  EXPECT_FALSE(after.classify_uplink(200, std::nullopt, addr("::1")).ok());

  // Exhaustive small-scale interleaving: a reader that captures its snapshot
  // at any point sees results wholly from version 1 or wholly from version 2.
  for (int capture_point = 0; capture_point < 2; ++capture_point) {
    TableSnapshot snap = capture_point == 0 ? before : after;
    bool sees_old = snap.classify_uplink(200, std::nullopt, addr("::1")).ok();
    uint64_t id100 = snap.classify_uplink(100, std::nullopt, addr("::1")).value()->id;
    if (sees_old) {
      EXPECT_EQ(id100, 1u);
      EXPECT_EQ(snap.version(), 1u);
    } else {
      EXPECT_EQ(id100, 3u);
      EXPECT_EQ(snap.version(), 2u);
    }
  }
}

// Randomized tables checked against the brute-force oracles. Sized to the
// acceptance bar: 10^3 rules x 10^3 queries.
TEST(OracleEquivalence, UplinkRandomized) {
  std::mt19937 rng(4242);
  std::vector<UplinkRule> rules;
  RuleTable table;
  RuleUpdate u;
  for (uint64_t id = 1; id <= 1000; ++id) {
    UplinkRule r;
    r.id = id;
    r.priority = static_cast<int>(rng() % 16);
    r.match.teid = rng() % 64;  // dense space so queries collide often
    if (rng() % 2) r.match.qfi = static_cast<uint8_t>(rng() % 4);
    if (rng() % 4 == 0) {
      uint8_t len = static_cast<uint8_t>(rng() % 65);
      r.match.inner_src = Prefix{Ipv6Address::from_u64(rng(), 0), len};
    }
    r.action = {Ipv6Address::from_u64(0x20010db800000000ull, id)};
    rules.push_back(r);
    u.add_uplink.push_back(r);
  }
  ASSERT_TRUE(table.apply_update(u).ok());
  auto snap = table.snapshot();
  for (int q = 0; q < 1000; ++q) {
    uint32_t teid = rng() % 64;
    std::optional<uint8_t> qfi;
    if (rng() % 3) qfi = static_cast<uint8_t>(rng() % 4);
    Ipv6Address src = Ipv6Address::from_u64(rng(), rng());
    auto got = snap.classify_uplink(teid, qfi, src);
    const UplinkRule* want = oracle_uplink(rules, teid, qfi, src);
    if (want == nullptr) {
      EXPECT_FALSE(got.ok());
    } else {
      ASSERT_TRUE(got.ok());
      EXPECT_EQ(got.value()->id, want->id);
    }
  }
}

TEST(OracleEquivalence, DownlinkRandomized) {
  std::mt19937 rng(777);
  std::vector<DownlinkRule> rules;
  RuleTable table;
  RuleUpdate u;
  for (uint64_t id = 1; id <= 1000; ++id) {
    DownlinkRule r;
    r.id = id;
    // Clustered prefixes so nesting occurs.
    uint8_t len = static_cast<uint8_t>(rng() % 129);
    uint64_t hi = 0x20010db800000000ull | (rng() % 8) << 8;
    uint64_t lo = (rng() % 2) ? 0 : rng() % 4;
    r.ue_prefix = Prefix{Ipv6Address::from_u64(hi, lo), len};
    r.action = {Ipv6Address::from_u64(0x20010db8000e0000ull, id),
                Ipv6Address::from_u64(0x20010db800a10000ull, 1)};
    rules.push_back(r);
    u.add_downlink.push_back(r);
  }
  ASSERT_TRUE(table.apply_update(u).ok());
  auto snap = table.snapshot();
  for (int q = 0; q < 1000; ++q) {
    uint64_t hi = 0x20010db800000000ull | (rng() % 8) << 8;
    uint64_t lo = rng() % 4;
    Ipv6Address dst = Ipv6Address::from_u64(hi, lo);
    auto got = snap.classify_downlink(dst);
    const DownlinkRule* want = oracle_downlink(rules, dst);
    if (want == nullptr) {
      EXPECT_FALSE(got.ok());
    } else {
      ASSERT_TRUE(got.ok());
      EXPECT_EQ(got.value()->id, want->id);
    }
  }
}

}  // namespace
}  // namespace srvsim::steering
