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

#ifndef SRVSIM_STEERING_HPP_
#define SRVSIM_STEERING_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "srvsim/address.hpp"
#include "srvsim/result.hpp"
#include "srvsim/sid.hpp"

namespace srvsim::steering {

using RuleId = uint64_t;

// Uplink classification key: TEID is always exact; QFI and the inner source
// prefix narrow the match when present. This is what makes slice-granular
// steering expressible.
struct UplinkMatch {
  uint32_t teid = 0;
  std::optional<uint8_t> qfi;
  std::optional<Prefix> inner_src;

  bool operator==(const UplinkMatch&) const = default;
};

struct UplinkRule {
  RuleId id = 0;
  int priority = 0;  // larger wins; ties by lower id
  UplinkMatch match;
  SegmentList action;

  bool same_content(const UplinkRule& o) const {
    return priority == o.priority && match == o.match && action == o.action;
  }
  bool operator==(const UplinkRule&) const = default;
};

// Downlink rule: longest-prefix match on the UE address. The action must be
// GTP6.E-shaped: at least [gtp6e sid, gNB address] at the tail.
struct DownlinkRule {
  RuleId id = 0;
  Prefix ue_prefix;
  SegmentList action;

  bool same_content(const DownlinkRule& o) const {
    return ue_prefix == o.ue_prefix && action == o.action;
  }
  bool operator==(const DownlinkRule&) const = default;
};

enum class LookupError { NoMatch };
enum class UpdateError { UnknownRuleId, DuplicateRuleId, ShapeViolation };

inline const char* to_string(UpdateError e) {
  switch (e) {
    case UpdateError::UnknownRuleId: return "UnknownRuleId";
    case UpdateError::DuplicateRuleId: return "DuplicateRuleId";
    case UpdateError::ShapeViolation: return "ShapeViolation";
  }
  return "UnknownError";
}

struct RuleUpdate {
  std::vector<UplinkRule> add_uplink;
  std::vector<DownlinkRule> add_downlink;
  std::vector<RuleId> remove;

  bool empty() const {
    return add_uplink.empty() && add_downlink.empty() && remove.empty();
  }
};

struct TableData {
  uint64_t version = 0;
  std::vector<UplinkRule> uplink;
  std::vector<DownlinkRule> downlink;
};

// Immutable view of one table version. Lookups against a snapshot observe
// exactly the rules installed up to that version, regardless of later
// updates to the owning table.
class TableSnapshot {
 public:
  explicit TableSnapshot(std::shared_ptr<const TableData> data) : data_(std::move(data)) {}

  uint64_t version() const { return data_->version; }
  size_t rule_count() const { return data_->uplink.size() + data_->downlink.size(); }
  const std::vector<UplinkRule>& uplink_rules() const { return data_->uplink; }
  const std::vector<DownlinkRule>& downlink_rules() const { return data_->downlink; }

  // Highest-priority rule whose every present match field matches;
  // deterministic tie-break by lowest rule id.
  Result<const UplinkRule*, LookupError> classify_uplink(
      uint32_t teid, std::optional<uint8_t> qfi, const Ipv6Address& inner_src) const {
    const UplinkRule* best = nullptr;
    for (const auto& rule : data_->uplink) {
      if (rule.match.teid != teid) continue;
      if (rule.match.qfi && (!qfi || *rule.match.qfi != *qfi)) continue;
      if (rule.match.inner_src && !rule.match.inner_src->contains(inner_src)) continue;
      if (!best || rule.priority > best->priority ||
          (rule.priority == best->priority && rule.id < best->id)) {
        best = &rule;
      }
    }
    if (!best) return LookupError::NoMatch;
    return best;
  }

  Result<const DownlinkRule*, LookupError> classify_downlink(const Ipv6Address& inner_dst) const {
    const DownlinkRule* best = nullptr;
    for (const auto& rule : data_->downlink) {
      if (!rule.ue_prefix.contains(inner_dst)) continue;
      if (!best || rule.ue_prefix.length > best->ue_prefix.length ||
          (rule.ue_prefix.length == best->ue_prefix.length && rule.id < best->id)) {
        best = &rule;
      }
    }
    if (!best) return LookupError::NoMatch;
    return best;
  }

 private:
  std::shared_ptr<const TableData> data_;
};

// Versioned rule table owned by one gateway. Single writer; readers take
// snapshots, so an update is one pointer swap and no lookup ever sees a
// half-applied batch.
class RuleTable {
 public:
  RuleTable() : data_(std::make_shared<const TableData>()) {}

  // Restricts downlink-action shape checks to these SID prefixes when set.
  void set_gtp6e_prefixes(std::vector<Prefix> prefixes) {
    gtp6e_prefixes_ = std::move(prefixes);
  }

  TableSnapshot snapshot() const { return TableSnapshot(data_); }
  uint64_t version() const { return data_->version; }
  size_t rule_count() const { return snapshot().rule_count(); }

  Result<uint64_t, UpdateError> apply_update(const RuleUpdate& update) {
    if (update.empty()) return data_->version;
    for (const auto& rule : update.add_downlink) {
      if (!downlink_shape_ok(rule)) return UpdateError::ShapeViolation;
    }
    TableData next;
    next.uplink = data_->uplink;
    next.downlink = data_->downlink;
    for (RuleId id : update.remove) {
      auto up = std::find_if(next.uplink.begin(), next.uplink.end(),
                             [id](const UplinkRule& r) { return r.id == id; });
      if (up != next.uplink.end()) {
        next.uplink.erase(up);
        continue;
      }
      auto down = std::find_if(next.downlink.begin(), next.downlink.end(),
                               [id](const DownlinkRule& r) { return r.id == id; });
      if (down == next.downlink.end()) return UpdateError::UnknownRuleId;
      next.downlink.erase(down);
    }
    for (const auto& rule : update.add_uplink) {
      if (holds_id(next, rule.id)) return UpdateError::DuplicateRuleId;
      next.uplink.push_back(rule);
    }
    for (const auto& rule : update.add_downlink) {
      if (holds_id(next, rule.id)) return UpdateError::DuplicateRuleId;
      next.downlink.push_back(rule);
    }
    next.version = data_->version + 1;
    data_ = std::make_shared<const TableData>(std::move(next));
    return data_->version;
  }

  Result<const UplinkRule*, LookupError> classify_uplink(
      uint32_t teid, std::optional<uint8_t> qfi, const Ipv6Address& inner_src) const {
    return snapshot().classify_uplink(teid, qfi, inner_src);
  }
  Result<const DownlinkRule*, LookupError> classify_downlink(const Ipv6Address& dst) const {
    return snapshot().classify_downlink(dst);
  }

 private:
  static bool holds_id(const TableData& data, RuleId id) {
    for (const auto& r : data.uplink) {
      if (r.id == id) return true;
    }
    for (const auto& r : data.downlink) {
      if (r.id == id) return true;
    }
    return false;
  }

  bool downlink_shape_ok(const DownlinkRule& rule) const {
    if (rule.action.size() < 2) return false;
    if (gtp6e_prefixes_.empty()) return true;
    const Ipv6Address& penultimate = rule.action[rule.action.size() - 2];
    for (const auto& p : gtp6e_prefixes_) {
      if (p.contains(penultimate)) return true;
    }
    return false;
  }

  std::shared_ptr<const TableData> data_;
  std::vector<Prefix> gtp6e_prefixes_;
};

}  // namespace srvsim::steering

#endif  // SRVSIM_STEERING_HPP_
