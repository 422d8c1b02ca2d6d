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

#ifndef SRVSIM_PFCP_CONTROLLER_HPP_
#define SRVSIM_PFCP_CONTROLLER_HPP_

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "srvsim/pfcp/codec.hpp"
#include "srvsim/pfcp/session.hpp"
#include "srvsim/sid.hpp"
#include "srvsim/steering.hpp"

namespace srvsim::pfcp {

// Operator policy for one slice (network instance): where the instance
// lives and the segment lists that reach it.
struct SlicePolicy {
  std::string dn_gateway;        // node that owns the terminal DT SID
  SegmentList uplink_path;       // from the access gateway, ends in the DT SID
  SegmentList downlink_transit;  // optional reverse waypoints before the GTP6.E SID

  bool operator==(const SlicePolicy&) const = default;
};

struct InstancePolicy {
  std::map<std::string, SlicePolicy> slices;
};

// What the controller must know about each access-side gateway: the GTP-U
// address gNBs tunnel to, and the SID prefix downlink traffic re-enters
// GTP-U through.
struct AccessGatewayInfo {
  std::string gateway;
  Ipv6Address gtp6d_address;
  Prefix gtp6e_prefix;
};

// One rule the compiler wants installed, before an id is assigned.
struct DesiredRule {
  std::string gateway;
  std::variant<steering::UplinkRule, steering::DownlinkRule> rule;

  bool same_content(const DesiredRule& o) const {
    if (gateway != o.gateway || rule.index() != o.rule.index()) return false;
    if (const auto* up = std::get_if<steering::UplinkRule>(&rule)) {
      return up->same_content(std::get<steering::UplinkRule>(o.rule));
    }
    return std::get<steering::DownlinkRule>(rule).same_content(
        std::get<steering::DownlinkRule>(o.rule));
  }
};

enum class CompileError {
  UnknownNetworkInstance,
  UnknownAccessGateway,
  MissingOuterHeaderCreation,
  MissingNetworkInstance,
  SidEncoding,
};

inline const char* to_string(CompileError e) {
  switch (e) {
    case CompileError::UnknownNetworkInstance: return "UnknownNetworkInstance";
    case CompileError::UnknownAccessGateway: return "UnknownAccessGateway";
    case CompileError::MissingOuterHeaderCreation: return "MissingOuterHeaderCreation";
    case CompileError::MissingNetworkInstance: return "MissingNetworkInstance";
    case CompileError::SidEncoding: return "SidEncoding";
  }
  return "?";
}

// Translates one PFCP session into steering rules: the step that lets many
// gateways appear as one UPF. Uplink: (TEID, QFI) at the access gateway onto
// the slice's path. Downlink: UE /128 at the DN gateway onto
// [transit..., GTP6E(teid_dl, qfi), gNB].
inline Result<std::vector<DesiredRule>, CompileError> compile_session(
    const PfcpSession& session, const InstancePolicy& policy,
    const std::vector<AccessGatewayInfo>& access_gateways) {
  const Pdr* access = session.access_pdr();
  const Pdr* core = session.core_pdr();
  if (!access || !core) return CompileError::MissingNetworkInstance;
  std::optional<std::string> slice = access->pdi.network_instance;
  if (!slice) slice = core->pdi.network_instance;
  if (!slice) return CompileError::MissingNetworkInstance;
  auto policy_it = policy.slices.find(*slice);
  if (policy_it == policy.slices.end()) return CompileError::UnknownNetworkInstance;
  const SlicePolicy& sp = policy_it->second;

  const AccessGatewayInfo* ag = nullptr;
  for (const auto& candidate : access_gateways) {
    if (candidate.gtp6d_address == access->pdi.f_teid->address) {
      ag = &candidate;
      break;
    }
  }
  if (!ag) return CompileError::UnknownAccessGateway;

  const Far* downlink_far = session.far_by_id(core->far_id);
  if (!downlink_far || !downlink_far->outer_header_creation) {
    return CompileError::MissingOuterHeaderCreation;
  }
  const OuterHeaderCreation& ohc = *downlink_far->outer_header_creation;

  steering::UplinkRule uplink;
  uplink.priority = 100;
  uplink.match.teid = access->pdi.f_teid->teid;
  uplink.match.qfi = ohc.qfi;
  uplink.action = sp.uplink_path;

  auto gtp6e_sid = encode_gtp6e_sid(ag->gtp6e_prefix, ohc.teid, ohc.qfi);
  if (!gtp6e_sid.ok()) return CompileError::SidEncoding;
  steering::DownlinkRule downlink;
  downlink.ue_prefix = Prefix{*core->pdi.ue_ip, 128};
  downlink.action = sp.downlink_transit;
  downlink.action.push_back(gtp6e_sid.value());
  downlink.action.push_back(ohc.gnb);

  std::vector<DesiredRule> out;
  out.push_back(DesiredRule{ag->gateway, uplink});
  out.push_back(DesiredRule{sp.dn_gateway, downlink});
  return out;
}

// One atomic batch toward one gateway.
struct RulePush {
  std::string gateway;
  steering::RuleUpdate update;
};

using PushFn = std::function<Result<uint64_t, steering::UpdateError>(const RulePush&)>;

// The SR-domain controller. Northbound it impersonates a single UPF over
// PFCP; southbound it pushes compiled rules to the owning gateways. Strictly
// one message at a time: pushes triggered by a message complete before the
// next message is looked at.
class Controller {
 public:
  struct Config {
    Ipv6Address node_address;
    uint32_t recovery_time_stamp = 0xe0000000;
    InstancePolicy policy;
    std::vector<AccessGatewayInfo> access_gateways;
  };

  Controller(Config config, PushFn push)
      : config_(std::move(config)), push_(std::move(push)) {}

  const Ipv6Address& node_address() const { return config_.node_address; }
  size_t session_count() const { return sessions_.size(); }
  size_t association_count() const { return peer_node_.has_value() ? 1 : 0; }
  const InstancePolicy& policy() const { return config_.policy; }

  // Decodes one request and produces the encoded response. Rule pushes for
  // that request have completed by the time this returns.
  Result<Bytes, PfcpError> handle(ByteView request) {
    auto decoded = decode_pfcp(request);
    if (!decoded.ok()) return decoded.error();
    const PfcpMessage& msg = decoded.value();
    auto cache_key = std::make_pair(msg.message_type, msg.sequence);
    for (const auto& [key, response] : response_cache_) {
      if (key == cache_key) return response;  // idempotent retransmission
    }
    PfcpMessage response;
    switch (msg.message_type) {
      case kHeartbeatRequest: response = handle_heartbeat(msg); break;
      case kAssociationSetupRequest: response = handle_association_setup(msg); break;
      case kSessionEstablishmentRequest: response = handle_establishment(msg); break;
      case kSessionModificationRequest: response = handle_modification(msg); break;
      case kSessionDeletionRequest: response = handle_deletion(msg); break;
      default: return PfcpError::TooShort;  // outside the supported subset
    }
    Bytes encoded = encode_pfcp(response);
    response_cache_.emplace_back(cache_key, encoded);
    if (response_cache_.size() > kResponseCacheDepth) response_cache_.pop_front();
    return encoded;
  }

  // Replaces one slice's policy and recompiles every session bound to it.
  // All-or-nothing: on any failure the previous policy and rules stand,
  // including sessions already moved before the failing one.
  Result<Ok, std::string> update_policy(const std::string& slice, SlicePolicy sp) {
    auto previous = config_.policy;
    auto it = config_.policy.slices.find(slice);
    if (it == config_.policy.slices.end()) {
      config_.policy.slices.emplace(slice, std::move(sp));
    } else {
      it->second = std::move(sp);
    }
    std::vector<std::pair<uint64_t, std::vector<DesiredRule>>> plans;
    for (auto& [seid, record] : sessions_) {
      if (session_slice(record.session) != slice) continue;
      auto desired = compile_session(record.session, config_.policy,
                                     config_.access_gateways);
      if (!desired.ok()) {
        config_.policy = previous;
        return std::string(to_string(desired.error()));
      }
      plans.emplace_back(seid, std::move(desired).value());
    }
    std::vector<uint64_t> moved;
    for (auto& [seid, desired] : plans) {
      if (reconcile(sessions_.at(seid), desired)) {
        moved.push_back(seid);
        continue;
      }
      config_.policy = previous;
      for (uint64_t undo : moved) {
        auto back = compile_session(sessions_.at(undo).session, config_.policy,
                                    config_.access_gateways);
        if (back.ok()) reconcile(sessions_.at(undo), back.value());
      }
      return std::string("rule push failed");
    }
    return Ok{};
  }

 private:
  static constexpr size_t kResponseCacheDepth = 16;

  struct InstalledRule {
    std::string gateway;
    std::variant<steering::UplinkRule, steering::DownlinkRule> rule;  // with id

    steering::RuleId id() const {
      if (const auto* up = std::get_if<steering::UplinkRule>(&rule)) return up->id;
      return std::get<steering::DownlinkRule>(rule).id;
    }
    DesiredRule as_desired() const { return DesiredRule{gateway, rule}; }
  };

  struct SessionRecord {
    PfcpSession session;
    std::vector<InstalledRule> installed;
  };

  // Uplink classification keys must stay unique across sessions: one rule
  // per (gateway, teid, qfi) pair.
  bool uplink_key_collision(const std::vector<DesiredRule>& desired) const {
    for (const auto& want : desired) {
      const auto* up = std::get_if<steering::UplinkRule>(&want.rule);
      if (!up) continue;
      for (const auto& [seid, record] : sessions_) {
        for (const auto& installed : record.installed) {
          const auto* have = std::get_if<steering::UplinkRule>(&installed.rule);
          if (!have || installed.gateway != want.gateway) continue;
          if (have->match.teid == up->match.teid && have->match.qfi == up->match.qfi) {
            return true;
          }
        }
      }
    }
    return false;
  }

  static std::string session_slice(const PfcpSession& s) {
    if (const Pdr* access = s.access_pdr(); access && access->pdi.network_instance) {
      return *access->pdi.network_instance;
    }
    if (const Pdr* core = s.core_pdr(); core && core->pdi.network_instance) {
      return *core->pdi.network_instance;
    }
    return {};
  }

  PfcpMessage make_response(uint8_t type, const PfcpMessage& request,
                            std::optional<uint64_t> seid) {
    PfcpMessage r;
    r.message_type = type;
    r.sequence = request.sequence;
    r.seid = seid;
    return r;
  }

  PfcpMessage handle_heartbeat(const PfcpMessage& request) {
    PfcpMessage r = make_response(kHeartbeatResponse, request, std::nullopt);
    r.ies.push_back(ie_recovery_time_stamp(config_.recovery_time_stamp));
    return r;
  }

  PfcpMessage handle_association_setup(const PfcpMessage& request) {
    PfcpMessage r = make_response(kAssociationSetupResponse, request, std::nullopt);
    r.ies.push_back(ie_node_id_v6(config_.node_address));
    const Ie* peer = request.find(kIeNodeId);
    if (!peer) {
      r.ies.push_back(ie_cause(kCauseMandatoryIeMissing));
      return r;
    }
    if (auto v6 = node_id_v6(*peer)) peer_node_ = *v6;  // repeated setup: idempotent
    r.ies.push_back(ie_cause(kCauseAccepted));
    r.ies.push_back(ie_recovery_time_stamp(config_.recovery_time_stamp));
    return r;
  }

  PfcpMessage handle_establishment(const PfcpMessage& request) {
    const Ie* cp_fseid_ie = request.find(kIeFSeid);
    auto cp = cp_fseid_ie ? fseid_v6(*cp_fseid_ie) : std::nullopt;
    std::optional<uint64_t> reply_seid =
        cp ? std::optional<uint64_t>(cp->seid) : std::optional<uint64_t>(0);
    PfcpMessage r = make_response(kSessionEstablishmentResponse, request, reply_seid);
    r.ies.push_back(ie_node_id_v6(config_.node_address));
    if (!cp) {
      r.ies.push_back(ie_cause(kCauseMandatoryIeMissing));
      return r;
    }
    auto rules = parse_session_rules(request);
    if (!rules.ok()) {
      r.ies.push_back(ie_cause(kCauseMandatoryIeMissing));
      return r;
    }
    PfcpSession session;
    session.cp_fseid = *cp;
    session.pdrs = rules->pdrs;
    session.fars = rules->fars;
    if (validate_session(session)) {
      r.ies.push_back(ie_cause(kCauseMandatoryIeMissing));
      return r;
    }
    auto desired = compile_session(session, config_.policy, config_.access_gateways);
    if (!desired.ok()) {
      r.ies.push_back(ie_cause(kCauseRequestRejected));
      return r;
    }
    if (uplink_key_collision(desired.value())) {
      r.ies.push_back(ie_cause(kCauseRequestRejected));
      return r;
    }
    uint64_t up_seid = next_seid_++;
    session.up_fseid = FSeid{up_seid, config_.node_address};
    SessionRecord record;
    record.session = session;
    if (!reconcile(record, desired.value())) {
      r.ies.push_back(ie_cause(kCauseRequestRejected));
      return r;
    }
    sessions_.emplace(up_seid, std::move(record));
    r.ies.push_back(ie_cause(kCauseAccepted));
    r.ies.push_back(ie_fseid_v6(up_seid, config_.node_address));
    return r;
  }

  PfcpMessage handle_modification(const PfcpMessage& request) {
    auto it = request.seid ? sessions_.find(*request.seid) : sessions_.end();
    if (it == sessions_.end()) {
      PfcpMessage r = make_response(kSessionModificationResponse, request, 0);
      r.ies.push_back(ie_cause(kCauseSessionContextNotFound));
      return r;
    }
    SessionRecord& record = it->second;
    PfcpMessage r = make_response(kSessionModificationResponse, request,
                                  record.session.cp_fseid.seid);
    auto rules = parse_session_rules(request);
    if (!rules.ok()) {
      r.ies.push_back(ie_cause(kCauseMandatoryIeMissing));
      return r;
    }
    // Re-sent Create PDR/FAR IEs replace entries with the same id.
    PfcpSession updated = record.session;
    for (const auto& pdr : rules->pdrs) {
      auto existing = std::find_if(updated.pdrs.begin(), updated.pdrs.end(),
                                   [&](const Pdr& p) { return p.pdr_id == pdr.pdr_id; });
      if (existing != updated.pdrs.end()) {
        *existing = pdr;
      } else {
        updated.pdrs.push_back(pdr);
      }
    }
    for (const auto& far : rules->fars) {
      auto existing = std::find_if(updated.fars.begin(), updated.fars.end(),
                                   [&](const Far& f) { return f.far_id == far.far_id; });
      if (existing != updated.fars.end()) {
        *existing = far;
      } else {
        updated.fars.push_back(far);
      }
    }
    if (validate_session(updated)) {
      r.ies.push_back(ie_cause(kCauseMandatoryIeMissing));
      return r;
    }
    auto desired = compile_session(updated, config_.policy, config_.access_gateways);
    if (!desired.ok()) {
      r.ies.push_back(ie_cause(kCauseRequestRejected));
      return r;
    }
    PfcpSession before = record.session;
    record.session = updated;
    if (!reconcile(record, desired.value())) {
      record.session = before;
      r.ies.push_back(ie_cause(kCauseRequestRejected));
      return r;
    }
    r.ies.push_back(ie_cause(kCauseAccepted));
    return r;
  }

  PfcpMessage handle_deletion(const PfcpMessage& request) {
    auto it = request.seid ? sessions_.find(*request.seid) : sessions_.end();
    if (it == sessions_.end()) {
      PfcpMessage r = make_response(kSessionDeletionResponse, request, 0);
      r.ies.push_back(ie_cause(kCauseSessionContextNotFound));
      return r;
    }
    PfcpMessage r = make_response(kSessionDeletionResponse, request,
                                  it->second.session.cp_fseid.seid);
    if (!reconcile(it->second, {})) {
      r.ies.push_back(ie_cause(kCauseRequestRejected));
      return r;
    }
    sessions_.erase(it);
    r.ies.push_back(ie_cause(kCauseAccepted));
    return r;
  }

  // Drives a session's installed rules to the desired set: per gateway, one
  // atomic update removing stale ids and adding new ones. Content-identical
  // rules keep their ids, so a no-op modification touches no table.
  bool reconcile(SessionRecord& record, const std::vector<DesiredRule>& desired) {
    std::vector<bool> kept(record.installed.size(), false);
    std::vector<DesiredRule> to_add;
    for (const auto& want : desired) {
      bool found = false;
      for (size_t i = 0; i < record.installed.size(); ++i) {
        if (!kept[i] && record.installed[i].as_desired().same_content(want)) {
          kept[i] = true;
          found = true;
          break;
        }
      }
      if (!found) to_add.push_back(want);
    }
    std::map<std::string, steering::RuleUpdate> per_gateway;
    std::vector<InstalledRule> next_installed;
    for (size_t i = 0; i < record.installed.size(); ++i) {
      if (kept[i]) {
        next_installed.push_back(record.installed[i]);
      } else {
        per_gateway[record.installed[i].gateway].remove.push_back(
            record.installed[i].id());
      }
    }
    for (const auto& want : to_add) {
      InstalledRule installed;
      installed.gateway = want.gateway;
      if (const auto* up = std::get_if<steering::UplinkRule>(&want.rule)) {
        steering::UplinkRule rule = *up;
        rule.id = next_rule_id_++;
        per_gateway[want.gateway].add_uplink.push_back(rule);
        installed.rule = rule;
      } else {
        steering::DownlinkRule rule = std::get<steering::DownlinkRule>(want.rule);
        rule.id = next_rule_id_++;
        per_gateway[want.gateway].add_downlink.push_back(rule);
        installed.rule = rule;
      }
      next_installed.push_back(std::move(installed));
    }
    // Apply, keeping enough to roll back if a later gateway fails.
    std::vector<std::pair<std::string, steering::RuleUpdate>> applied;
    for (const auto& [gateway, update] : per_gateway) {
      if (update.empty()) continue;
      auto pushed = push_(RulePush{gateway, update});
      if (!pushed.ok()) {
        for (auto rit = applied.rbegin(); rit != applied.rend(); ++rit) {
          steering::RuleUpdate inverse;
          inverse.add_uplink = {};  // re-add removed, remove added
          for (const auto& r : rit->second.add_uplink) inverse.remove.push_back(r.id);
          for (const auto& r : rit->second.add_downlink) inverse.remove.push_back(r.id);
          for (steering::RuleId id : rit->second.remove) {
            for (const auto& prev : record.installed) {
              if (prev.id() != id) continue;
              if (const auto* up = std::get_if<steering::UplinkRule>(&prev.rule)) {
                inverse.add_uplink.push_back(*up);
              } else {
                inverse.add_downlink.push_back(std::get<steering::DownlinkRule>(prev.rule));
              }
            }
          }
          push_(RulePush{rit->first, inverse});
        }
        return false;
      }
      applied.emplace_back(gateway, update);
    }
    record.installed = std::move(next_installed);
    return true;
  }

  Config config_;
  PushFn push_;
  std::optional<Ipv6Address> peer_node_;
  std::map<uint64_t, SessionRecord> sessions_;
  std::deque<std::pair<std::pair<uint8_t, uint32_t>, Bytes>> response_cache_;
  uint64_t next_seid_ = 1;
  steering::RuleId next_rule_id_ = 1;
};

}  // namespace srvsim::pfcp

#endif  // SRVSIM_PFCP_CONTROLLER_HPP_
