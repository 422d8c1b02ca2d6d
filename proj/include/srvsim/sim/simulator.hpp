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

#ifndef SRVSIM_SIM_SIMULATOR_HPP_
#define SRVSIM_SIM_SIMULATOR_HPP_

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "srvsim/behaviors.hpp"
#include "srvsim/pfcp/controller.hpp"
#include "srvsim/pfcp/session.hpp"
#include "srvsim/sim/topology.hpp"
#include "srvsim/sim/trace.hpp"
#include "srvsim/steering.hpp"
#include "srvsim/wire/stack.hpp"

namespace srvsim::sim {

// A PDU session as the scenario declares it. TEIDs and QFI are what the SMF
// emulator will signal over PFCP.
struct SessionDef {
  std::string name;
  std::string ue;
  std::string slice;  // PFCP network instance
  uint32_t uplink_teid = 0;
  uint32_t downlink_teid = 0;
  uint8_t qfi = 0;
  std::optional<Ipv6Address> ue_ip;  // defaults to the UE's address
};

// Static rules loaded from configuration, installed before any event runs.
struct StaticRule {
  std::string gateway;
  std::variant<steering::UplinkRule, steering::DownlinkRule> rule;
};

// --- events -----------------------------------------------------------------

struct EvPacket {
  std::string node;
  std::string from;
  Bytes packet;
};
struct EvRadioUplink {
  std::string gnb;
  std::string ue;
  std::string session;
  Bytes inner;
};
struct EvRadioDownlink {
  std::string ue;
  std::string gnb;
  std::string session;
  Bytes inner;
};
struct EvInjectPdu {
  std::string ue;
  std::string session;
  Ipv6Address dst;
  Bytes payload;
};
struct EvInjectDownlink {
  std::string host;
  Ipv6Address ue_ip;
  std::optional<Ipv6Address> src;
  Bytes payload;
};
struct EvSessionEstablish {
  SessionDef def;
};
struct EvSessionModify {
  std::string session;
  std::optional<std::string> gnb;
  std::optional<uint32_t> downlink_teid;
  std::optional<uint8_t> qfi;
};
struct EvSessionDelete {
  std::string session;
};
struct EvPolicyUpdate {
  std::string slice;
  pfcp::SlicePolicy policy;
};
struct EvHandover {
  std::string ue;
  std::string to_gnb;
  std::optional<uint32_t> new_downlink_teid;
};

using EventPayload =
    std::variant<EvPacket, EvRadioUplink, EvRadioDownlink, EvInjectPdu,
                 EvInjectDownlink, EvSessionEstablish, EvSessionModify,
                 EvSessionDelete, EvPolicyUpdate, EvHandover>;

struct Event {
  uint64_t time = 0;
  uint64_t seq = 0;  // insertion order; ties on time resolve by it
  EventPayload payload;
};

// --- errors & census ---------------------------------------------------------

struct BuildError {
  enum class Kind {
    DuplicateNode,
    DanglingLink,
    BadLink,
    DuplicateAddress,
    BadBinding,
    BadAttachment,
    DuplicateController,
    DuplicateSmf,
    BadStaticRule,
  };
  Kind kind;
  std::string detail;
};

inline const char* to_string(BuildError::Kind k) {
  switch (k) {
    case BuildError::Kind::DuplicateNode: return "DuplicateNode";
    case BuildError::Kind::DanglingLink: return "DanglingLink";
    case BuildError::Kind::BadLink: return "BadLink";
    case BuildError::Kind::DuplicateAddress: return "DuplicateAddress";
    case BuildError::Kind::BadBinding: return "BadBinding";
    case BuildError::Kind::BadAttachment: return "BadAttachment";
    case BuildError::Kind::DuplicateController: return "DuplicateController";
    case BuildError::Kind::DuplicateSmf: return "DuplicateSmf";
    case BuildError::Kind::BadStaticRule: return "BadStaticRule";
  }
  return "?";
}

enum class RunError { LimitExceeded };

struct NodeCensus {
  std::string node;
  NodeKind kind = NodeKind::SrTransit;
  size_t rule_entries = 0;
  size_t session_entries = 0;
};

struct StateCensus {
  std::vector<NodeCensus> nodes;

  size_t rule_entries(NodeKind kind) const {
    size_t n = 0;
    for (const auto& c : nodes) {
      if (c.kind == kind) n += c.rule_entries;
    }
    return n;
  }
  size_t session_entries(NodeKind kind) const {
    size_t n = 0;
    for (const auto& c : nodes) {
      if (c.kind == kind) n += c.session_entries;
    }
    return n;
  }
  // Session-derived state: rules plus session contexts.
  size_t state_entries(NodeKind kind) const {
    return rule_entries(kind) + session_entries(kind);
  }
};

struct ConservationCounters {
  size_t originated = 0;
  size_t delivered = 0;
  size_t dropped = 0;
};

// --- simulator ----------------------------------------------------------------

// Deterministic discrete-event network: lossless in-order fixed-delay links,
// a virtual tick clock, and a per-hop trace. Strictly single-threaded; all
// node state lives here.
class Simulator {
 public:
  struct BuildInput {
    Topology topology;
    pfcp::InstancePolicy policy;
    std::vector<StaticRule> static_rules;
  };

  static Result<std::unique_ptr<Simulator>, BuildError> build(BuildInput input) {
    auto sim = std::unique_ptr<Simulator>(new Simulator());
    auto err = sim->init(std::move(input));
    if (err) return *err;
    return sim;
  }

  // -- scheduling (validated against the static topology) --

  Result<Ok, std::string> schedule_establish(uint64_t time, SessionDef def) {
    if (!smf_node_) return std::string("no SMF node in topology");
    if (!ues_.count(def.ue)) return std::string("unknown UE: " + def.ue);
    if (def.name.empty()) return std::string("session needs a name");
    if (declared_sessions_.count(def.name)) {
      return std::string("duplicate session name: " + def.name);
    }
    declared_sessions_.emplace(def.name, def);
    push_event(time, EvSessionEstablish{std::move(def)});
    return Ok{};
  }

  Result<Ok, std::string> schedule_modify(uint64_t time, EvSessionModify ev) {
    if (!declared_sessions_.count(ev.session)) {
      return std::string("unknown session: " + ev.session);
    }
    if (ev.gnb && !gnb_exists(*ev.gnb)) return std::string("unknown gNB: " + *ev.gnb);
    push_event(time, std::move(ev));
    return Ok{};
  }

  Result<Ok, std::string> schedule_delete(uint64_t time, const std::string& session) {
    if (!declared_sessions_.count(session)) {
      return std::string("unknown session: " + session);
    }
    push_event(time, EvSessionDelete{session});
    return Ok{};
  }

  Result<Ok, std::string> schedule_inject(uint64_t time, const std::string& ue,
                                          const std::string& session,
                                          const Ipv6Address& dst, Bytes payload) {
    auto def = declared_sessions_.find(session);
    if (def == declared_sessions_.end()) {
      return std::string("unknown session: " + session);
    }
    if (def->second.ue != ue) {
      return std::string("session " + session + " does not belong to " + ue);
    }
    push_event(time, EvInjectPdu{ue, session, dst, std::move(payload)});
    return Ok{};
  }

  Result<Ok, std::string> schedule_inject_downlink(uint64_t time, const std::string& host,
                                                   const Ipv6Address& ue_ip,
                                                   std::optional<Ipv6Address> src,
                                                   Bytes payload) {
    if (!hosts_.count(host)) return std::string("unknown edge host: " + host);
    push_event(time, EvInjectDownlink{host, ue_ip, src, std::move(payload)});
    return Ok{};
  }

  Result<Ok, std::string> schedule_handover(uint64_t time, const std::string& ue,
                                            const std::string& to_gnb,
                                            std::optional<uint32_t> new_teid = {}) {
    auto u = ues_.find(ue);
    if (u == ues_.end()) return std::string("unknown UE: " + ue);
    if (!gnb_exists(to_gnb)) return std::string("unknown gNB: " + to_gnb);
    if (!linked(ue, to_gnb)) return std::string("no radio link " + ue + " - " + to_gnb);
    push_event(time, EvHandover{ue, to_gnb, new_teid});
    return Ok{};
  }

  Result<Ok, std::string> schedule_policy_update(uint64_t time, const std::string& slice,
                                                 pfcp::SlicePolicy policy) {
    if (!controller_node_) return std::string("no controller node in topology");
    push_event(time, EvPolicyUpdate{slice, std::move(policy)});
    return Ok{};
  }

  // Raw packet injection straight onto a node, for harness-level tests.
  Result<Ok, std::string> schedule_packet(uint64_t time, const std::string& node,
                                          Bytes packet, const std::string& from = "") {
    if (!kinds_.count(node)) return std::string("unknown node: " + node);
    if (is_user_packet(packet)) ++conservation_.originated;
    push_event(time, EvPacket{node, from, std::move(packet)});
    return Ok{};
  }

  // -- execution --

  bool pending() const { return !queue_.empty(); }
  uint64_t now() const { return now_; }

  // Pops and executes the earliest event.
  void step() {
    Event e = pop_event();
    now_ = std::max(now_, e.time);
    std::visit([this](auto&& ev) { process(ev); }, e.payload);
  }

  // Runs to an empty queue, or fails with LimitExceeded when the virtual
  // clock would pass `max_ticks` (the forwarding-loop backstop).
  Result<Ok, RunError> run_until_idle(uint64_t max_ticks) {
    while (!queue_.empty()) {
      if (queue_.top().time > max_ticks) return RunError::LimitExceeded;
      step();
    }
    return Ok{};
  }

  // -- observation --

  const std::vector<TraceEvent>& trace() const { return trace_; }
  const ConservationCounters& conservation() const { return conservation_; }

  StateCensus snapshot_state() const {
    StateCensus census;
    for (const auto& [id, kind] : kinds_) {
      NodeCensus c;
      c.node = id;
      c.kind = kind;
      switch (kind) {
        case NodeKind::SrGateway:
          c.rule_entries = gateways_.at(id).table.rule_count();
          break;
        case NodeKind::Gnb:
          c.session_entries = gnbs_.at(id).sessions.size();
          break;
        case NodeKind::Controller:
          if (controller_) c.session_entries = controller_->session_count();
          break;
        case NodeKind::Smf:
          for (const auto& [name, s] : smf_.sessions) {
            if (s.established) ++c.session_entries;
          }
          break;
        default:
          break;
      }
      census.nodes.push_back(std::move(c));
    }
    return census;
  }

  size_t smf_observed_node_ids() const { return smf_.observed_node_ids.size(); }
  size_t smf_associations() const { return smf_.associations_acked; }
  const steering::RuleTable* gateway_table(const std::string& id) const {
    auto it = gateways_.find(id);
    return it == gateways_.end() ? nullptr : &it->second.table;
  }
  const pfcp::Controller* controller() const { return controller_.get(); }

 private:
  Simulator() = default;

  struct UeState {
    Ipv6Address addr;
    std::string serving_gnb;
  };
  struct GnbSessionCtx {
    std::string session;
    std::string ue;
    uint32_t uplink_teid = 0;
    uint32_t downlink_teid = 0;
    uint8_t qfi = 0;
  };
  struct GnbState {
    Ipv6Address addr;
    std::string gateway;
    Ipv6Address upstream;  // the gateway's GTP6.D service address
    std::vector<GnbSessionCtx> sessions;
  };
  struct GatewayState {
    Ipv6Address sr_source;
    std::vector<BehaviorBinding> bindings;
    steering::RuleTable table;
    HostDirectory hosts;
    std::set<std::string> attached_hosts;
  };
  struct TransitState {
    std::vector<BehaviorBinding> bindings;
  };
  struct HostState {
    std::vector<Ipv6Address> addrs;
    std::string gateway;
    bool echo = true;
  };
  struct SmfSession {
    SessionDef def;
    uint64_t cp_seid = 0;
    uint64_t up_seid = 0;
    bool established = false;
    std::string current_gnb;
  };
  struct SmfPending {
    uint8_t msg_type = 0;
    std::string session;
    SessionDef def_after;
    std::string gnb_after;
  };
  struct SmfState {
    Ipv6Address addr;
    Ipv6Address controller_addr;
    uint32_t next_seq = 1;
    uint64_t next_cp_seid = 0x5000;
    uint32_t next_teid = 5000;
    bool association_requested = false;
    size_t associations_acked = 0;
    std::set<Ipv6Address> observed_node_ids;
    std::map<std::string, SmfSession> sessions;
    std::map<uint32_t, SmfPending> pending;
  };

  // ---- construction ----

  std::optional<BuildError> init(BuildInput input) {
    topo_ = std::move(input.topology);
    policy_ = std::move(input.policy);
    for (const auto& node : topo_.nodes) {
      if (kinds_.count(node.id)) {
        return BuildError{BuildError::Kind::DuplicateNode, node.id};
      }
      kinds_.emplace(node.id, node.kind);
    }
    if (auto err = init_links()) return err;
    if (auto err = init_nodes()) return err;
    if (auto err = init_fib()) return err;
    compute_next_hops();
    if (auto err = check_attachments()) return err;
    if (auto err = init_controller()) return err;
    if (auto err = install_static_rules(input.static_rules)) return err;
    return std::nullopt;
  }

  std::optional<BuildError> init_links() {
    for (const auto& link : topo_.links) {
      if (!kinds_.count(link.a) || !kinds_.count(link.b)) {
        return BuildError{BuildError::Kind::DanglingLink, link.a + " - " + link.b};
      }
      if (link.a == link.b) {
        return BuildError{BuildError::Kind::BadLink, "self link on " + link.a};
      }
      if (link.delay == 0) {
        return BuildError{BuildError::Kind::BadLink,
                          "zero delay on " + link.a + " - " + link.b};
      }
      if (link_delay_[link.a].count(link.b)) {
        return BuildError{BuildError::Kind::BadLink,
                          "duplicate link " + link.a + " - " + link.b};
      }
      link_delay_[link.a][link.b] = link.delay;
      link_delay_[link.b][link.a] = link.delay;
    }
    return std::nullopt;
  }

  std::optional<BuildError> init_nodes() {
    for (const auto& node : topo_.nodes) {
      bool is_sr = node.kind == NodeKind::SrGateway || node.kind == NodeKind::SrTransit;
      if (!node.bindings.empty() && !is_sr) {
        return BuildError{BuildError::Kind::BadBinding,
                          node.id + " is not an SR node but has SID bindings"};
      }
      for (size_t i = 0; i < node.bindings.size(); ++i) {
        for (size_t j = i + 1; j < node.bindings.size(); ++j) {
          const Prefix& p = node.bindings[i].sid_prefix;
          const Prefix& q = node.bindings[j].sid_prefix;
          if (p.contains(q.address) || q.contains(p.address)) {
            return BuildError{BuildError::Kind::BadBinding,
                              "overlapping SID prefixes on " + node.id};
          }
        }
      }
      switch (node.kind) {
        case NodeKind::Ue: {
          if (node.addrs.empty()) {
            return BuildError{BuildError::Kind::BadAttachment, node.id + " has no address"};
          }
          ues_.emplace(node.id, UeState{node.addrs[0], node.attached_to});
          break;
        }
        case NodeKind::Gnb: {
          if (node.addrs.empty()) {
            return BuildError{BuildError::Kind::BadAttachment, node.id + " has no address"};
          }
          GnbState g;
          g.addr = node.addrs[0];
          g.gateway = node.attached_to;
          gnbs_.emplace(node.id, std::move(g));
          break;
        }
        case NodeKind::SrGateway: {
          GatewayState g;
          g.sr_source = node.addrs.empty() ? Ipv6Address() : node.addrs[0];
          g.bindings = node.bindings;
          gateways_.emplace(node.id, std::move(g));
          break;
        }
        case NodeKind::SrTransit:
          transits_.emplace(node.id, TransitState{node.bindings});
          break;
        case NodeKind::EdgeHost: {
          if (node.addrs.empty()) {
            return BuildError{BuildError::Kind::BadAttachment, node.id + " has no address"};
          }
          hosts_.emplace(node.id, HostState{node.addrs, node.attached_to, node.echo});
          break;
        }
        case NodeKind::Controller: {
          if (controller_node_) {
            return BuildError{BuildError::Kind::DuplicateController, node.id};
          }
          if (node.addrs.empty()) {
            return BuildError{BuildError::Kind::BadAttachment, node.id + " has no address"};
          }
          controller_node_ = node.id;
          break;
        }
        case NodeKind::Smf: {
          if (smf_node_) return BuildError{BuildError::Kind::DuplicateSmf, node.id};
          if (node.addrs.empty()) {
            return BuildError{BuildError::Kind::BadAttachment, node.id + " has no address"};
          }
          smf_node_ = node.id;
          smf_.addr = node.addrs[0];
          break;
        }
      }
    }
    return std::nullopt;
  }

  std::optional<BuildError> init_fib() {
    auto add = [this](const Prefix& prefix, const std::string& node) -> bool {
      for (const auto& [p, n] : fib_) {
        if (p == prefix) return false;
      }
      fib_.emplace_back(prefix, node);
      return true;
    };
    for (const auto& node : topo_.nodes) {
      bool routable = node.kind == NodeKind::Gnb || node.kind == NodeKind::SrGateway ||
                      node.kind == NodeKind::Controller || node.kind == NodeKind::Smf ||
                      node.kind == NodeKind::SrTransit;
      if (routable) {
        for (const auto& a : node.addrs) {
          if (!add(Prefix{a, 128}, node.id)) {
            return BuildError{BuildError::Kind::DuplicateAddress, a.str()};
          }
        }
      }
      for (const auto& b : node.bindings) {
        if (!add(b.sid_prefix, node.id)) {
          return BuildError{BuildError::Kind::DuplicateAddress, b.sid_prefix.str()};
        }
      }
    }
    // UE addresses must be unique or downlink rules are ambiguous.
    std::set<Ipv6Address> ue_addrs;
    for (const auto& [id, ue] : ues_) {
      if (!ue_addrs.insert(ue.addr).second) {
        return BuildError{BuildError::Kind::DuplicateAddress, ue.addr.str()};
      }
    }
    std::stable_sort(fib_.begin(), fib_.end(), [](const auto& a, const auto& b) {
      return a.first.length > b.first.length;
    });
    return std::nullopt;
  }

  std::optional<BuildError> check_attachments() {
    for (auto& [id, ue] : ues_) {
      if (!gnb_exists(ue.serving_gnb)) {
        return BuildError{BuildError::Kind::BadAttachment,
                          id + " not attached to a gNB"};
      }
      if (!linked(id, ue.serving_gnb)) {
        return BuildError{BuildError::Kind::BadAttachment,
                          "no link " + id + " - " + ue.serving_gnb};
      }
    }
    for (auto& [id, gnb] : gnbs_) {
      auto gw = gateways_.find(gnb.gateway);
      if (gw == gateways_.end()) {
        return BuildError{BuildError::Kind::BadAttachment,
                          id + " not attached to an SR gateway"};
      }
      if (!linked(id, gnb.gateway)) {
        return BuildError{BuildError::Kind::BadAttachment,
                          "no link " + id + " - " + gnb.gateway};
      }
      const BehaviorBinding* gtp6d = nullptr;
      for (const auto& b : gw->second.bindings) {
        if (b.kind == BehaviorKind::EndMGtp6D) gtp6d = &b;
      }
      if (!gtp6d) {
        return BuildError{BuildError::Kind::BadAttachment,
                          gnb.gateway + " has no GTP6.D binding for " + id};
      }
      gnb.upstream = gtp6d->sid_prefix.address;
    }
    for (auto& [id, host] : hosts_) {
      auto gw = gateways_.find(host.gateway);
      if (gw == gateways_.end()) {
        return BuildError{BuildError::Kind::BadAttachment,
                          id + " not attached to an SR gateway"};
      }
      if (!linked(id, host.gateway)) {
        return BuildError{BuildError::Kind::BadAttachment,
                          "no link " + id + " - " + host.gateway};
      }
      for (const auto& a : host.addrs) {
        if (gw->second.hosts.find(a)) {
          return BuildError{BuildError::Kind::DuplicateAddress,
                            a.str() + " duplicated behind " + host.gateway};
        }
      }
      gw->second.hosts.add(id, host.addrs);
      gw->second.attached_hosts.insert(id);
    }
    return std::nullopt;
  }

  std::optional<BuildError> init_controller() {
    std::vector<Prefix> gtp6e_prefixes;
    std::vector<pfcp::AccessGatewayInfo> access;
    for (const auto& [id, gw] : gateways_) {
      const BehaviorBinding* d = nullptr;
      const BehaviorBinding* e = nullptr;
      for (const auto& b : gw.bindings) {
        if (b.kind == BehaviorKind::EndMGtp6D) d = &b;
        if (b.kind == BehaviorKind::EndMGtp6E) e = &b;
      }
      if (e) gtp6e_prefixes.push_back(e->sid_prefix);
      if (d && e) {
        access.push_back(pfcp::AccessGatewayInfo{id, d->sid_prefix.address, e->sid_prefix});
      }
    }
    for (auto& [id, gw] : gateways_) {
      gw.table.set_gtp6e_prefixes(gtp6e_prefixes);
    }
    if (!controller_node_) return std::nullopt;
    pfcp::Controller::Config config;
    config.node_address = topo_.find(*controller_node_)->addrs[0];
    config.policy = policy_;
    config.access_gateways = std::move(access);
    controller_ = std::make_unique<pfcp::Controller>(
        std::move(config), [this](const pfcp::RulePush& push) {
          return apply_push(push);
        });
    if (smf_node_) smf_.controller_addr = topo_.find(*controller_node_)->addrs[0];
    return std::nullopt;
  }

  std::optional<BuildError> install_static_rules(const std::vector<StaticRule>& rules) {
    std::map<std::string, steering::RuleUpdate> per_gateway;
    for (const auto& r : rules) {
      if (!gateways_.count(r.gateway)) {
        return BuildError{BuildError::Kind::BadStaticRule,
                          "unknown gateway " + r.gateway};
      }
      if (const auto* up = std::get_if<steering::UplinkRule>(&r.rule)) {
        per_gateway[r.gateway].add_uplink.push_back(*up);
      } else {
        per_gateway[r.gateway].add_downlink.push_back(std::get<steering::DownlinkRule>(r.rule));
      }
    }
    for (const auto& [gateway, update] : per_gateway) {
      auto applied = gateways_.at(gateway).table.apply_update(update);
      if (!applied.ok()) {
        return BuildError{BuildError::Kind::BadStaticRule,
                          gateway + ": " + steering::to_string(applied.error())};
      }
    }
    return std::nullopt;
  }

  void compute_next_hops() {
    std::vector<std::string> ids;
    for (const auto& [id, kind] : kinds_) ids.push_back(id);
    for (const auto& src : ids) {
      std::map<std::string, std::string> first_hop;
      std::deque<std::string> frontier{src};
      std::set<std::string> seen{src};
      while (!frontier.empty()) {
        std::string cur = frontier.front();
        frontier.pop_front();
        auto adj = link_delay_.find(cur);
        if (adj == link_delay_.end()) continue;
        for (const auto& [next, delay] : adj->second) {  // std::map: sorted, stable
          if (!seen.insert(next).second) continue;
          first_hop[next] = cur == src ? next : first_hop[cur];
          frontier.push_back(next);
        }
      }
      next_hop_[src] = std::move(first_hop);
    }
  }

  // ---- helpers ----

  bool gnb_exists(const std::string& id) const { return gnbs_.count(id) > 0; }
  bool linked(const std::string& a, const std::string& b) const {
    auto it = link_delay_.find(a);
    return it != link_delay_.end() && it->second.count(b) > 0;
  }
  uint64_t delay(const std::string& a, const std::string& b) const {
    return link_delay_.at(a).at(b);
  }

  const std::string* fib_lookup(const Ipv6Address& dst) const {
    for (const auto& [prefix, node] : fib_) {
      if (prefix.contains(dst)) return &node;
    }
    return nullptr;
  }

  void push_event(uint64_t time, EventPayload payload) {
    queue_.push(Event{time, event_seq_++, std::move(payload)});
  }

  Event pop_event() {
    Event e = queue_.top();
    queue_.pop();
    return e;
  }

  void emit(TraceAction action, const std::string& node, ByteView packet,
            std::string detail = "") {
    TraceEvent e;
    e.time = now_;
    e.node = node;
    e.action = action;
    e.summary = wire::summarize_packet(packet);
    e.detail = std::move(detail);
    e.packet.assign(packet.begin(), packet.end());
    trace_.push_back(std::move(e));
  }

  void emit_note(TraceAction action, const std::string& node, std::string detail) {
    TraceEvent e;
    e.time = now_;
    e.node = node;
    e.action = action;
    e.detail = std::move(detail);
    trace_.push_back(std::move(e));
  }

  static bool is_user_packet(ByteView packet) {
    auto ip = wire::parse_ipv6(packet);
    if (!ip.ok()) return true;  // junk counts against conservation too
    ByteView rest = ip->payload;
    uint8_t proto = ip->header.next_header;
    if (proto == wire::kProtoRouting) {
      auto srh = wire::parse_srh(rest);
      if (!srh.ok()) return true;
      proto = srh->header.next_header;
      rest = srh->payload;
    }
    if (proto != wire::kProtoUdp) return true;
    auto udp = wire::parse_udp(rest);
    if (!udp.ok()) return true;
    if (udp->header.dst_port == pfcp::kPfcpUdpPort ||
        udp->header.src_port == pfcp::kPfcpUdpPort) {
      return false;  // PFCP control traffic
    }
    if (udp->header.dst_port == wire::kGtpuUdpPort) {
      auto gtpu = wire::parse_gtpu(udp->payload);
      if (gtpu.ok() && gtpu->header.message_type != wire::kGtpuMsgGpdu) {
        return false;  // GTP-U path management
      }
    }
    return true;
  }

  void drop(const std::string& node, ByteView packet, DropReason reason) {
    emit(TraceAction::Drop, node, packet, to_string(reason));
    if (is_user_packet(packet)) ++conservation_.dropped;
  }

  // Router-level move of one packet toward its destination: resolve the
  // owner through the FIB, decrement the hop limit, send on the first hop.
  void route_and_transmit(const std::string& node, Bytes packet) {
    auto ip = wire::parse_ipv6(packet);
    if (!ip.ok()) {
      drop(node, packet, DropReason::MalformedPacket);
      return;
    }
    const std::string* owner = fib_lookup(ip->header.dst);
    if (!owner) {
      drop(node, packet, DropReason::NoRoute);
      return;
    }
    if (*owner == node) {
      handle_local(node, std::move(packet), node);
      return;
    }
    auto hops = next_hop_.find(node);
    if (hops == next_hop_.end()) {
      drop(node, packet, DropReason::NoRoute);
      return;
    }
    auto hop = hops->second.find(*owner);
    if (hop == hops->second.end()) {
      drop(node, packet, DropReason::NoRoute);
      return;
    }
    if (packet[7] <= 1) {
      drop(node, packet, DropReason::HopLimitExceeded);
      return;
    }
    --packet[7];
    emit(TraceAction::Xmit, node, packet, "to " + hop->second);
    uint64_t d = delay(node, hop->second);
    push_event(now_ + d, EvPacket{hop->second, node, std::move(packet)});
  }

  // Attachment and radio legs carry the user PDU untouched.
  void transmit_attached(const std::string& from, const std::string& to, Bytes packet,
                         const std::string& note) {
    emit(TraceAction::Xmit, from, packet, note);
    push_event(now_ + delay(from, to), EvPacket{to, from, std::move(packet)});
  }

  // ---- event handlers ----

  void process(EvPacket& ev) {
    emit(TraceAction::Recv, ev.node, ev.packet,
         ev.from.empty() ? "injected" : "from " + ev.from);
    handle_local(ev.node, std::move(ev.packet), ev.from);
  }

  void handle_local(const std::string& node, Bytes packet, const std::string& from) {
    switch (kinds_.at(node)) {
      case NodeKind::SrGateway:
      case NodeKind::SrTransit:
        handle_sr_node(node, std::move(packet), from);
        break;
      case NodeKind::Gnb:
        handle_gnb_packet(node, std::move(packet));
        break;
      case NodeKind::Controller:
        handle_controller_packet(node, std::move(packet));
        break;
      case NodeKind::Smf:
        handle_smf_packet(node, std::move(packet));
        break;
      case NodeKind::EdgeHost:
        handle_host_packet(node, std::move(packet));
        break;
      case NodeKind::Ue:
        drop(node, packet, DropReason::MalformedPacket);
        break;
    }
  }

  const BehaviorBinding* binding_for(const std::vector<BehaviorBinding>& bindings,
                                     const Ipv6Address& dst) const {
    for (const auto& b : bindings) {
      if (b.sid_prefix.contains(dst)) return &b;
    }
    return nullptr;
  }

  void handle_sr_node(const std::string& node, Bytes packet, const std::string& from) {
    bool is_gateway = gateways_.count(node) > 0;
    // Traffic from an attached edge host enters downlink classification.
    if (is_gateway && gateways_.at(node).attached_hosts.count(from)) {
      handle_downlink_entry(node, std::move(packet));
      return;
    }
    auto ip = wire::parse_ipv6(packet);
    if (!ip.ok()) {
      drop(node, packet, DropReason::MalformedPacket);
      return;
    }
    const std::vector<BehaviorBinding>& bindings =
        is_gateway ? gateways_.at(node).bindings : transits_.at(node).bindings;
    const BehaviorBinding* binding = binding_for(bindings, ip->header.dst);
    if (!binding) {
      bool own_address = false;
      const NodeSpec* spec = topo_.find(node);
      for (const auto& a : spec->addrs) own_address |= (a == ip->header.dst);
      if (own_address) {
        drop(node, packet, DropReason::NoBinding);
      } else {
        route_and_transmit(node, std::move(packet));  // plain IPv6 transit
      }
      return;
    }
    ForwardDecision decision = ForwardDecision::drop(DropReason::NoBinding);
    switch (binding->kind) {
      case BehaviorKind::End:
        decision = behavior_end(packet, *binding);
        break;
      case BehaviorKind::EndMGtp6D: {
        const GatewayState& gw = gateways_.at(node);
        if (answer_gtpu_echo(node, packet, *binding)) return;
        decision = behavior_gtp6_d(packet, *binding, gw.sr_source, gw.table.snapshot());
        break;
      }
      case BehaviorKind::EndMGtp6E:
        decision = behavior_gtp6_e(packet, *binding, gateways_.at(node).sr_source);
        break;
      case BehaviorKind::EndDt4:
      case BehaviorKind::EndDt6:
        decision = behavior_dt(packet, *binding, is_gateway
                                                     ? gateways_.at(node).hosts
                                                     : HostDirectory());
        break;
    }
    switch (decision.kind()) {
      case ForwardDecision::Kind::Forward:
        route_and_transmit(node, decision.take_packet());
        break;
      case ForwardDecision::Kind::Drop:
        drop(node, packet, decision.reason());
        break;
      case ForwardDecision::Kind::LocalDeliver:
        transmit_attached(node, decision.host(), decision.take_packet(),
                          "to " + decision.host());
        break;
    }
  }

  // GTP-U path management is answered at the gateway; echoes do not enter
  // the SR domain. Returns true when the packet was consumed.
  bool answer_gtpu_echo(const std::string& node, ByteView packet,
                        const BehaviorBinding& binding) {
    auto view = wire::parse_gtpu_packet(packet);
    if (!view.ok() || view->gtpu.message_type != wire::kGtpuMsgEchoRequest) return false;
    wire::GtpuHeader reply;
    reply.message_type = wire::kGtpuMsgEchoResponse;
    reply.teid = 0;
    reply.s_flag = true;
    reply.sequence = view->gtpu.sequence;
    Bytes recovery = {14, 0};  // Recovery IE, restart counter 0
    Bytes out = wire::make_gtpu_packet(binding.sid_prefix.address, view->outer.src,
                                       reply, recovery);
    route_and_transmit(node, std::move(out));
    return true;
  }

  void handle_downlink_entry(const std::string& node, Bytes packet) {
    GatewayState& gw = gateways_.at(node);
    auto inner = wire::InnerPdu::from_bytes(packet);
    if (!inner || inner->ip_version != 6) {
      drop(node, packet, DropReason::MalformedPacket);
      return;
    }
    auto ip = wire::parse_ipv6(packet);
    if (!ip.ok()) {
      drop(node, packet, DropReason::MalformedPacket);
      return;
    }
    auto rule = gw.table.classify_downlink(ip->header.dst);
    if (!rule.ok()) {
      drop(node, packet, DropReason::NoMatchingRule);
      return;
    }
    auto encapsulated = h_encaps(*inner, rule.value()->action, gw.sr_source);
    if (!encapsulated.ok()) {
      drop(node, packet, DropReason::NoMatchingRule);
      return;
    }
    route_and_transmit(node, std::move(encapsulated).value());
  }

  void handle_gnb_packet(const std::string& node, Bytes packet) {
    GnbState& gnb = gnbs_.at(node);
    auto view = wire::parse_gtpu_packet(packet);
    if (!view.ok()) {
      drop(node, packet,
           view.error() == wire::StackError::BadChecksum ? DropReason::BadChecksum
                                                         : DropReason::NotGtpu);
      return;
    }
    if (view->outer.dst != gnb.addr) {
      drop(node, packet, DropReason::NoRoute);
      return;
    }
    if (view->gtpu.message_type != wire::kGtpuMsgGpdu) {
      emit(TraceAction::Deliver, node, packet, "gtpu-echo");
      return;
    }
    const GnbSessionCtx* ctx = nullptr;
    for (const auto& c : gnb.sessions) {
      if (c.downlink_teid == view->gtpu.teid) ctx = &c;
    }
    if (!ctx) {
      drop(node, packet, DropReason::UnknownTeid);
      return;
    }
    Bytes inner(view->inner.begin(), view->inner.end());
    emit(TraceAction::Xmit, node, inner, "radio to " + ctx->ue + " session=" + ctx->session);
    push_event(now_ + delay(node, ctx->ue),
               EvRadioDownlink{ctx->ue, node, ctx->session, std::move(inner)});
  }

  void handle_controller_packet(const std::string& node, Bytes packet) {
    auto ip = wire::parse_ipv6(packet);
    if (!ip.ok() || ip->header.next_header != wire::kProtoUdp) {
      drop(node, packet, DropReason::MalformedPacket);
      return;
    }
    auto udp = wire::parse_udp(ip->payload);
    if (!udp.ok() || udp->header.dst_port != pfcp::kPfcpUdpPort || !controller_) {
      drop(node, packet, DropReason::NoBinding);
      return;
    }
    if (!wire::verify_udp_checksum(ip->header.src, ip->header.dst, ip->payload)) {
      drop(node, packet, DropReason::BadChecksum);
      return;
    }
    auto response = controller_->handle(udp->payload);
    if (!response.ok()) {
      drop(node, packet, DropReason::MalformedPacket);
      return;
    }
    Bytes reply_udp = wire::serialize_udp(ip->header.dst, ip->header.src,
                                          pfcp::kPfcpUdpPort, pfcp::kPfcpUdpPort,
                                          response.value())
                          .value();
    wire::Ipv6Header reply_ip;
    reply_ip.next_header = wire::kProtoUdp;
    reply_ip.src = ip->header.dst;
    reply_ip.dst = ip->header.src;
    route_and_transmit(node, wire::serialize_ipv6(reply_ip, reply_udp).value());
  }

  Result<uint64_t, steering::UpdateError> apply_push(const pfcp::RulePush& push) {
    auto it = gateways_.find(push.gateway);
    if (it == gateways_.end()) return steering::UpdateError::UnknownRuleId;
    auto applied = it->second.table.apply_update(push.update);
    if (applied.ok()) {
      emit_note(TraceAction::RuleUpdate, push.gateway,
                "add=" + std::to_string(push.update.add_uplink.size() +
                                        push.update.add_downlink.size()) +
                    " remove=" + std::to_string(push.update.remove.size()) +
                    " version=" + std::to_string(applied.value()));
    } else {
      emit_note(TraceAction::RuleUpdate, push.gateway,
                std::string("rejected: ") + steering::to_string(applied.error()));
    }
    return applied;
  }

  // ---- SMF emulator ----

  void send_pfcp(const pfcp::PfcpMessage& msg) {
    Bytes payload = pfcp::encode_pfcp(msg);
    Bytes udp = wire::serialize_udp(smf_.addr, smf_.controller_addr, pfcp::kPfcpUdpPort,
                                    pfcp::kPfcpUdpPort, payload)
                    .value();
    wire::Ipv6Header ip;
    ip.next_header = wire::kProtoUdp;
    ip.src = smf_.addr;
    ip.dst = smf_.controller_addr;
    route_and_transmit(*smf_node_, wire::serialize_ipv6(ip, udp).value());
  }

  void ensure_association() {
    if (smf_.association_requested) return;
    smf_.association_requested = true;
    pfcp::PfcpMessage req;
    req.message_type = pfcp::kAssociationSetupRequest;
    req.sequence = smf_.next_seq++;
    req.ies.push_back(pfcp::ie_node_id_v6(smf_.addr));
    req.ies.push_back(pfcp::ie_recovery_time_stamp(0xd0000000));
    smf_.pending[req.sequence] = SmfPending{pfcp::kAssociationSetupRequest, "", {}, ""};
    send_pfcp(req);
  }

  pfcp::SessionRequestParams session_params(const SmfSession& s,
                                            const std::string& gnb_id) const {
    const GnbState& gnb = gnbs_.at(gnb_id);
    pfcp::SessionRequestParams p;
    p.cp_seid = s.cp_seid;
    p.cp_address = smf_.addr;
    p.uplink_teid = s.def.uplink_teid;
    p.upf_gtp_address = gnb.upstream;
    p.ue_ip = s.def.ue_ip.value_or(ues_.at(s.def.ue).addr);
    p.network_instance = s.def.slice;
    p.downlink_teid = s.def.downlink_teid;
    p.gnb_address = gnb.addr;
    p.qfi = s.def.qfi;
    return p;
  }

  void process(EvSessionEstablish& ev) {
    if (!smf_node_ || !controller_node_) return;
    ensure_association();
    SmfSession s;
    s.def = ev.def;
    s.cp_seid = smf_.next_cp_seid++;
    s.current_gnb = ues_.at(ev.def.ue).serving_gnb;
    uint32_t seq = smf_.next_seq++;
    smf_.pending[seq] =
        SmfPending{pfcp::kSessionEstablishmentRequest, ev.def.name, s.def, s.current_gnb};
    pfcp::PfcpMessage req =
        pfcp::make_session_establishment_request(seq, session_params(s, s.current_gnb));
    req.sequence = seq;
    smf_.sessions[ev.def.name] = std::move(s);
    send_pfcp(req);
  }

  // RAN-side session context changes take effect at the event; the PFCP
  // modification that re-steers the SR domain follows asynchronously.
  void apply_gnb_context(const SessionDef& def, const std::string& gnb_id) {
    for (auto& [id, gnb] : gnbs_) {
      auto it = std::find_if(gnb.sessions.begin(), gnb.sessions.end(),
                             [&](const GnbSessionCtx& c) { return c.session == def.name; });
      if (it != gnb.sessions.end()) {
        gnb.sessions.erase(it);
        emit_note(TraceAction::RuleUpdate, id, "session " + def.name + " removed");
      }
    }
    GnbSessionCtx ctx;
    ctx.session = def.name;
    ctx.ue = def.ue;
    ctx.uplink_teid = def.uplink_teid;
    ctx.downlink_teid = def.downlink_teid;
    ctx.qfi = def.qfi;
    gnbs_.at(gnb_id).sessions.push_back(ctx);
    emit_note(TraceAction::RuleUpdate, gnb_id,
              "session " + def.name + " uplink-teid=" + std::to_string(def.uplink_teid) +
                  " downlink-teid=" + std::to_string(def.downlink_teid));
  }

  void remove_gnb_context(const std::string& session) {
    for (auto& [id, gnb] : gnbs_) {
      auto it = std::find_if(gnb.sessions.begin(), gnb.sessions.end(),
                             [&](const GnbSessionCtx& c) { return c.session == session; });
      if (it != gnb.sessions.end()) {
        gnb.sessions.erase(it);
        emit_note(TraceAction::RuleUpdate, id, "session " + session + " removed");
      }
    }
  }

  void process(EvSessionModify& ev) {
    auto it = smf_.sessions.find(ev.session);
    if (it == smf_.sessions.end() || !it->second.established) {
      emit_note(TraceAction::RuleUpdate, smf_node_ ? *smf_node_ : "smf",
                "modify ignored, session not established: " + ev.session);
      return;
    }
    SmfSession& s = it->second;
    SessionDef updated = s.def;
    if (ev.downlink_teid) updated.downlink_teid = *ev.downlink_teid;
    if (ev.qfi) updated.qfi = *ev.qfi;
    std::string gnb = ev.gnb.value_or(s.current_gnb);
    apply_gnb_context(updated, gnb);
    uint32_t seq = smf_.next_seq++;
    smf_.pending[seq] =
        SmfPending{pfcp::kSessionModificationRequest, ev.session, updated, gnb};
    SmfSession probe = s;
    probe.def = updated;
    send_pfcp(pfcp::make_downlink_update_request(seq, s.up_seid,
                                                 session_params(probe, gnb)));
  }

  void process(EvSessionDelete& ev) {
    auto it = smf_.sessions.find(ev.session);
    if (it == smf_.sessions.end() || !it->second.established) {
      emit_note(TraceAction::RuleUpdate, smf_node_ ? *smf_node_ : "smf",
                "delete ignored, session not established: " + ev.session);
      return;
    }
    uint32_t seq = smf_.next_seq++;
    smf_.pending[seq] = SmfPending{pfcp::kSessionDeletionRequest, ev.session, {}, ""};
    send_pfcp(pfcp::make_session_deletion_request(seq, it->second.up_seid));
  }

  void process(EvHandover& ev) {
    UeState& ue = ues_.at(ev.ue);
    std::string previous = ue.serving_gnb;
    ue.serving_gnb = ev.to_gnb;
    emit_note(TraceAction::RuleUpdate, ev.ue,
              "handover " + previous + " -> " + ev.to_gnb);
    for (auto& [name, s] : smf_.sessions) {
      if (s.def.ue != ev.ue || !s.established) continue;
      EvSessionModify modify;
      modify.session = name;
      modify.gnb = ev.to_gnb;
      modify.downlink_teid = ev.new_downlink_teid ? *ev.new_downlink_teid
                                                  : smf_.next_teid++;
      process(modify);
    }
  }

  void process(EvPolicyUpdate& ev) {
    if (!controller_) return;
    auto updated = controller_->update_policy(ev.slice, ev.policy);
    emit_note(TraceAction::RuleUpdate, *controller_node_,
              updated.ok() ? "policy " + ev.slice + " -> " + ev.policy.dn_gateway
                           : "policy update failed: " + updated.error());
  }

  void handle_smf_packet(const std::string& node, Bytes packet) {
    auto ip = wire::parse_ipv6(packet);
    if (!ip.ok() || ip->header.next_header != wire::kProtoUdp) {
      drop(node, packet, DropReason::MalformedPacket);
      return;
    }
    auto udp = wire::parse_udp(ip->payload);
    if (!udp.ok() || udp->header.dst_port != pfcp::kPfcpUdpPort) {
      drop(node, packet, DropReason::NoBinding);
      return;
    }
    if (!wire::verify_udp_checksum(ip->header.src, ip->header.dst, ip->payload)) {
      drop(node, packet, DropReason::BadChecksum);
      return;
    }
    auto decoded = pfcp::decode_pfcp(udp->payload);
    if (!decoded.ok()) {
      drop(node, packet, DropReason::MalformedPacket);
      return;
    }
    const pfcp::PfcpMessage& msg = decoded.value();
    if (const pfcp::Ie* peer = msg.find(pfcp::kIeNodeId)) {
      if (auto v6 = pfcp::node_id_v6(*peer)) smf_.observed_node_ids.insert(*v6);
    }
    auto pending = smf_.pending.find(msg.sequence);
    if (pending == smf_.pending.end()) {
      emit(TraceAction::Deliver, node, packet, "pfcp unmatched response");
      return;
    }
    SmfPending p = pending->second;
    smf_.pending.erase(pending);
    std::optional<uint8_t> cause;
    if (const pfcp::Ie* c = msg.find(pfcp::kIeCause)) cause = pfcp::as_u8(*c);
    bool accepted = cause && *cause == pfcp::kCauseAccepted;
    switch (p.msg_type) {
      case pfcp::kAssociationSetupRequest:
        if (accepted) ++smf_.associations_acked;
        break;
      case pfcp::kSessionEstablishmentRequest: {
        auto it = smf_.sessions.find(p.session);
        if (it == smf_.sessions.end()) break;
        if (!accepted) {
          smf_.sessions.erase(it);
          emit_note(TraceAction::RuleUpdate, node,
                    "establish rejected: " + p.session);
          break;
        }
        if (const pfcp::Ie* fseid = msg.find(pfcp::kIeFSeid)) {
          if (auto f = pfcp::fseid_v6(*fseid)) it->second.up_seid = f->seid;
        }
        it->second.established = true;
        apply_gnb_context(it->second.def, p.gnb_after);
        break;
      }
      case pfcp::kSessionModificationRequest: {
        auto it = smf_.sessions.find(p.session);
        if (it == smf_.sessions.end()) break;
        if (!accepted) {
          // SR domain kept the old steering; restore the RAN context too.
          apply_gnb_context(it->second.def, it->second.current_gnb);
          emit_note(TraceAction::RuleUpdate, node, "modify rejected: " + p.session);
          break;
        }
        it->second.def = p.def_after;
        it->second.current_gnb = p.gnb_after;
        break;
      }
      case pfcp::kSessionDeletionRequest: {
        if (!accepted) break;
        remove_gnb_context(p.session);
        smf_.sessions.erase(p.session);
        break;
      }
      default:
        break;
    }
    emit(TraceAction::Deliver, node, packet,
         "pfcp type=" + std::to_string(msg.message_type) +
             (cause ? " cause=" + std::to_string(*cause) : ""));
  }

  // ---- user plane entry/exit ----

  void process(EvInjectPdu& ev) {
    const SessionDef& def = declared_sessions_.at(ev.session);
    UeState& ue = ues_.at(ev.ue);
    Ipv6Address src = def.ue_ip.value_or(ue.addr);
    Bytes inner = wire::make_user_packet(src, ev.dst, ev.payload);
    ++conservation_.originated;
    emit(TraceAction::Xmit, ev.ue, inner, "session=" + ev.session);
    push_event(now_ + delay(ev.ue, ue.serving_gnb),
               EvRadioUplink{ue.serving_gnb, ev.ue, ev.session, std::move(inner)});
  }

  void process(EvRadioUplink& ev) {
    GnbState& gnb = gnbs_.at(ev.gnb);
    emit(TraceAction::Recv, ev.gnb, ev.inner, "radio session=" + ev.session);
    const GnbSessionCtx* ctx = nullptr;
    for (const auto& c : gnb.sessions) {
      if (c.session == ev.session) ctx = &c;
    }
    if (!ctx) {
      drop(ev.gnb, ev.inner, DropReason::UnknownSession);
      return;
    }
    wire::GtpuHeader gtpu;
    gtpu.message_type = wire::kGtpuMsgGpdu;
    gtpu.teid = ctx->uplink_teid;
    gtpu.extensions.emplace_back(wire::PduSessionContainer{wire::kPduTypeUplink, ctx->qfi});
    Bytes packet = wire::make_gtpu_packet(gnb.addr, gnb.upstream, gtpu, ev.inner);
    route_and_transmit(ev.gnb, std::move(packet));
  }

  void process(EvRadioDownlink& ev) {
    emit(TraceAction::Deliver, ev.ue, ev.inner,
         "session=" + ev.session + " via " + ev.gnb);
    ++conservation_.delivered;
  }

  void process(EvInjectDownlink& ev) {
    HostState& host = hosts_.at(ev.host);
    Ipv6Address src = ev.src.value_or(host.addrs[0]);
    Bytes inner = wire::make_user_packet(src, ev.ue_ip, ev.payload);
    ++conservation_.originated;
    transmit_attached(ev.host, host.gateway, std::move(inner), "inject downlink");
  }

  void handle_host_packet(const std::string& node, Bytes packet) {
    HostState& host = hosts_.at(node);
    emit(TraceAction::Deliver, node, packet, "");
    ++conservation_.delivered;
    if (!host.echo) return;
    auto ip = wire::parse_ipv6(packet);
    if (!ip.ok() || ip->header.src.is_unspecified()) return;
    wire::Ipv6Header reply = ip->header;
    reply.src = ip->header.dst;
    reply.dst = ip->header.src;
    reply.hop_limit = wire::kDefaultHopLimit;
    Bytes out = wire::serialize_ipv6(reply, ip->payload).value();
    ++conservation_.originated;
    transmit_attached(node, host.gateway, std::move(out), "echo reply");
  }

  // ---- fields ----

  struct EventOrder {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  Topology topo_;
  pfcp::InstancePolicy policy_;
  std::map<std::string, NodeKind> kinds_;
  std::map<std::string, UeState> ues_;
  std::map<std::string, GnbState> gnbs_;
  std::map<std::string, GatewayState> gateways_;
  std::map<std::string, TransitState> transits_;
  std::map<std::string, HostState> hosts_;
  std::optional<std::string> controller_node_;
  std::optional<std::string> smf_node_;
  std::unique_ptr<pfcp::Controller> controller_;
  SmfState smf_;
  std::map<std::string, SessionDef> declared_sessions_;

  std::vector<std::pair<Prefix, std::string>> fib_;
  std::map<std::string, std::map<std::string, uint64_t>> link_delay_;
  std::map<std::string, std::map<std::string, std::string>> next_hop_;

  uint64_t now_ = 0;
  uint64_t event_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
  std::vector<TraceEvent> trace_;
  ConservationCounters conservation_;
};

}  // namespace srvsim::sim

#endif  // SRVSIM_SIM_SIMULATOR_HPP_
