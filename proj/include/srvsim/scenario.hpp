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

#ifndef SRVSIM_SCENARIO_HPP_
#define SRVSIM_SCENARIO_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "srvsim/config.hpp"

// Scenario files: ordered timed events plus the assertions evaluated on the
// resulting trace. Assertions live here, not in test code, so scenarios
// double as a regression corpus.
//
//   [event]
//   time = 10
//   action = inject          # establish|modify|delete|inject|
//   ue = ueb                 # inject-downlink|handover|policy-update
//   session = sessA
//   dst = 2001:db8:5::5
//   payload = hello-a
//
//   [assert]
//   kind = delivered-at      # not-delivered-at|dropped-with-reason|
//   node = s1                # census|trace-visits-node
//   payload = hello-a

namespace srvsim::cfg {

struct EstablishSpec {
  std::string session;
};
struct ModifySpec {
  std::string session;
  std::optional<std::string> gnb;
  std::optional<uint32_t> downlink_teid;
  std::optional<uint8_t> qfi;
};
struct DeleteSpec {
  std::string session;
};
struct InjectSpec {
  std::string ue;
  std::string session;
  std::optional<Ipv6Address> dst;
  Bytes payload;
};
struct InjectDownlinkSpec {
  std::string host;
  std::optional<Ipv6Address> ue_ip;  // defaults to the named UE's address
  std::optional<std::string> ue;
  std::optional<Ipv6Address> src;
  Bytes payload;
};
struct HandoverSpec {
  std::string ue;
  std::string to_gnb;
  std::optional<uint32_t> downlink_teid;
};
struct PolicyUpdateSpec {
  std::string slice;
  pfcp::SlicePolicy policy;
};

using EventSpec = std::variant<EstablishSpec, ModifySpec, DeleteSpec, InjectSpec,
                               InjectDownlinkSpec, HandoverSpec, PolicyUpdateSpec>;

struct TimedEvent {
  uint64_t time = 0;
  int line = 0;
  EventSpec spec;
};

struct Assertion {
  enum class Kind {
    DeliveredAt,
    NotDeliveredAt,
    DroppedWithReason,
    Census,
    TraceVisitsNode,
  };
  Kind kind = Kind::DeliveredAt;
  int line = 0;
  std::string node;       // delivered-at / dropped / trace-visits
  std::string node_kind;  // census
  std::string reason;     // dropped-with-reason
  std::optional<uint64_t> payload_hash;
  std::optional<uint64_t> after;
  std::optional<uint32_t> teid;
  std::optional<uint8_t> qfi;
  std::optional<size_t> min;        // occurrence bounds (default min=1)
  std::optional<size_t> max;
  std::optional<size_t> min_state;  // census bounds
  std::optional<size_t> max_state;

  std::string describe() const {
    std::string out;
    switch (kind) {
      case Kind::DeliveredAt: out = "delivered-at " + node; break;
      case Kind::NotDeliveredAt: out = "not-delivered-at " + node; break;
      case Kind::DroppedWithReason: out = "dropped-with-reason " + node + " " + reason; break;
      case Kind::Census: out = "census " + node_kind; break;
      case Kind::TraceVisitsNode: out = "trace-visits-node " + node; break;
    }
    if (after) out += " after=" + std::to_string(*after);
    if (teid) out += " teid=" + std::to_string(*teid);
    if (payload_hash) out += " payload";
    return out;
  }
};

struct Scenario {
  std::string file;
  std::vector<sim::SessionDef> sessions;
  std::vector<TimedEvent> events;
  std::vector<Assertion> assertions;
};

namespace detail {

inline std::optional<Bytes> read_payload(const Section& s, ErrorSink& sink) {
  const Entry* text = s.find("payload");
  const Entry* hex = s.find("payload-hex");
  if (text && hex) {
    sink.add(s.line, "give either payload or payload-hex, not both");
    return std::nullopt;
  }
  if (text) return to_bytes(text->value);
  if (hex) {
    if (hex->value.size() % 2 != 0) {
      sink.add(hex->line, "payload-hex needs an even digit count");
      return std::nullopt;
    }
    Bytes out;
    for (size_t i = 0; i < hex->value.size(); i += 2) {
      auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
      };
      int hi = nibble(hex->value[i]);
      int lo = nibble(hex->value[i + 1]);
      if (hi < 0 || lo < 0) {
        sink.add(hex->line, "payload-hex has a non-hex digit");
        return std::nullopt;
      }
      out.push_back(static_cast<uint8_t>(hi << 4 | lo));
    }
    return out;
  }
  return Bytes{};
}

inline void load_event(const Section& s, Scenario& scenario, ErrorSink& sink) {
  const Entry* time = s.find("time");
  const Entry* action = s.find("action");
  if (!time || !action) {
    sink.add(s.line, "[event] needs time = and action =");
    return;
  }
  auto t = read_u64(*time, sink);
  if (!t) return;
  TimedEvent event;
  event.time = *t;
  event.line = s.line;
  const std::string& a = action->value;
  if (a == "establish" || a == "delete") {
    check_keys(s, {"time", "action", "session"}, sink);
    const Entry* session = s.find("session");
    if (!session) {
      sink.add(s.line, a + " needs session =");
      return;
    }
    if (a == "establish") {
      event.spec = EstablishSpec{session->value};
    } else {
      event.spec = DeleteSpec{session->value};
    }
  } else if (a == "modify") {
    check_keys(s, {"time", "action", "session", "gnb", "downlink-teid", "qfi"}, sink);
    const Entry* session = s.find("session");
    if (!session) {
      sink.add(s.line, "modify needs session =");
      return;
    }
    ModifySpec spec;
    spec.session = session->value;
    if (const Entry* e = s.find("gnb")) spec.gnb = e->value;
    if (const Entry* e = s.find("downlink-teid")) {
      if (auto v = read_u64(*e, sink)) spec.downlink_teid = static_cast<uint32_t>(*v);
    }
    if (const Entry* e = s.find("qfi")) {
      if (auto v = read_u64(*e, sink)) spec.qfi = static_cast<uint8_t>(*v);
    }
    event.spec = std::move(spec);
  } else if (a == "inject") {
    check_keys(s, {"time", "action", "ue", "session", "dst", "payload", "payload-hex"},
               sink);
    const Entry* ue = s.find("ue");
    const Entry* session = s.find("session");
    if (!ue || !session) {
      sink.add(s.line, "inject needs ue = and session =");
      return;
    }
    InjectSpec spec;
    spec.ue = ue->value;
    spec.session = session->value;
    const Entry* dst = s.find("dst");
    if (!dst) {
      sink.add(s.line, "inject needs dst =");
      return;
    }
    spec.dst = read_addr(*dst, sink);
    if (!spec.dst) return;
    auto payload = read_payload(s, sink);
    if (!payload) return;
    spec.payload = *payload;
    event.spec = std::move(spec);
  } else if (a == "inject-downlink") {
    check_keys(s, {"time", "action", "host", "ue", "ue-ip", "src", "payload",
                   "payload-hex"},
               sink);
    const Entry* host = s.find("host");
    if (!host) {
      sink.add(s.line, "inject-downlink needs host =");
      return;
    }
    InjectDownlinkSpec spec;
    spec.host = host->value;
    if (const Entry* e = s.find("ue")) spec.ue = e->value;
    if (const Entry* e = s.find("ue-ip")) spec.ue_ip = read_addr(*e, sink);
    if (const Entry* e = s.find("src")) spec.src = read_addr(*e, sink);
    if (!spec.ue && !spec.ue_ip) {
      sink.add(s.line, "inject-downlink needs ue = or ue-ip =");
      return;
    }
    auto payload = read_payload(s, sink);
    if (!payload) return;
    spec.payload = *payload;
    event.spec = std::move(spec);
  } else if (a == "handover") {
    check_keys(s, {"time", "action", "ue", "to-gnb", "downlink-teid"}, sink);
    const Entry* ue = s.find("ue");
    const Entry* gnb = s.find("to-gnb");
    if (!ue || !gnb) {
      sink.add(s.line, "handover needs ue = and to-gnb =");
      return;
    }
    HandoverSpec spec;
    spec.ue = ue->value;
    spec.to_gnb = gnb->value;
    if (const Entry* e = s.find("downlink-teid")) {
      if (auto v = read_u64(*e, sink)) spec.downlink_teid = static_cast<uint32_t>(*v);
    }
    event.spec = std::move(spec);
  } else if (a == "policy-update") {
    check_keys(s, {"time", "action", "slice", "dn-gateway", "uplink-path",
                   "downlink-path"},
               sink);
    const Entry* slice = s.find("slice");
    const Entry* gw = s.find("dn-gateway");
    const Entry* up = s.find("uplink-path");
    if (!slice || !gw || !up) {
      sink.add(s.line, "policy-update needs slice =, dn-gateway =, uplink-path =");
      return;
    }
    PolicyUpdateSpec spec;
    spec.slice = slice->value;
    spec.policy.dn_gateway = gw->value;
    if (auto path = read_path(*up, sink)) spec.policy.uplink_path = *path;
    if (const Entry* e = s.find("downlink-path")) {
      if (auto path = read_path(*e, sink, /*allow_empty=*/true)) {
        spec.policy.downlink_transit = *path;
      }
    }
    event.spec = std::move(spec);
  } else {
    sink.add(action->line, "unknown action: " + a);
    return;
  }
  scenario.events.push_back(std::move(event));
}

inline void load_assert(const Section& s, Scenario& scenario, ErrorSink& sink) {
  const Entry* kind = s.find("kind");
  if (!kind) {
    sink.add(s.line, "[assert] needs kind =");
    return;
  }
  Assertion a;
  a.line = s.line;
  const std::string& k = kind->value;
  if (k == "delivered-at") {
    a.kind = Assertion::Kind::DeliveredAt;
  } else if (k == "not-delivered-at") {
    a.kind = Assertion::Kind::NotDeliveredAt;
  } else if (k == "dropped-with-reason") {
    a.kind = Assertion::Kind::DroppedWithReason;
  } else if (k == "census") {
    a.kind = Assertion::Kind::Census;
  } else if (k == "trace-visits-node") {
    a.kind = Assertion::Kind::TraceVisitsNode;
  } else {
    sink.add(kind->line, "unknown assertion kind: " + k);
    return;
  }
  check_keys(s, {"kind", "node", "node-kind", "reason", "payload", "payload-hex",
                 "after", "teid", "qfi", "min", "max", "min-state", "max-state"},
             sink);
  if (const Entry* e = s.find("node")) a.node = e->value;
  if (const Entry* e = s.find("node-kind")) a.node_kind = e->value;
  if (const Entry* e = s.find("reason")) a.reason = e->value;
  if (s.find("payload") || s.find("payload-hex")) {
    if (auto payload = read_payload(s, sink)) a.payload_hash = fnv1a(*payload);
  }
  if (const Entry* e = s.find("after")) a.after = read_u64(*e, sink);
  if (const Entry* e = s.find("teid")) {
    if (auto v = read_u64(*e, sink)) a.teid = static_cast<uint32_t>(*v);
  }
  if (const Entry* e = s.find("qfi")) {
    if (auto v = read_u64(*e, sink)) a.qfi = static_cast<uint8_t>(*v);
  }
  if (const Entry* e = s.find("min")) {
    if (auto v = read_u64(*e, sink)) a.min = *v;
  }
  if (const Entry* e = s.find("max")) {
    if (auto v = read_u64(*e, sink)) a.max = *v;
  }
  if (const Entry* e = s.find("min-state")) {
    if (auto v = read_u64(*e, sink)) a.min_state = *v;
  }
  if (const Entry* e = s.find("max-state")) {
    if (auto v = read_u64(*e, sink)) a.max_state = *v;
  }
  bool needs_node = a.kind != Assertion::Kind::Census;
  if (needs_node && a.node.empty()) {
    sink.add(s.line, "assertion needs node =");
    return;
  }
  if (a.kind == Assertion::Kind::Census && a.node_kind.empty()) {
    sink.add(s.line, "census assertion needs node-kind =");
    return;
  }
  if (a.kind == Assertion::Kind::DroppedWithReason && a.reason.empty()) {
    sink.add(s.line, "dropped-with-reason needs reason =");
    return;
  }
  scenario.assertions.push_back(std::move(a));
}

}  // namespace detail

inline Result<Scenario, std::vector<ParseError>> load_scenario(const std::string& text,
                                                               const std::string& file) {
  auto sections = parse_sections(text, file);
  if (!sections.ok()) return sections.error();
  std::vector<ParseError> errors;
  ErrorSink sink(file, errors);
  Scenario scenario;
  scenario.file = file;
  for (const auto& s : sections.value()) {
    if (s.kind == "session") {
      if (auto def = detail::load_session(s, sink)) scenario.sessions.push_back(*def);
    } else if (s.kind == "event") {
      detail::load_event(s, scenario, sink);
    } else if (s.kind == "assert") {
      detail::load_assert(s, scenario, sink);
    } else {
      sink.add(s.line, "unknown section kind: [" + s.kind + "]");
    }
  }
  if (!errors.empty()) return errors;
  return scenario;
}

}  // namespace srvsim::cfg

#endif  // SRVSIM_SCENARIO_HPP_
