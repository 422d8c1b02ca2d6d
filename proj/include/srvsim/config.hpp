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

#ifndef SRVSIM_CONFIG_HPP_
#define SRVSIM_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "srvsim/pfcp/controller.hpp"
#include "srvsim/sim/simulator.hpp"
#include "srvsim/sim/topology.hpp"

// Declarative text format shared by configuration and scenario files:
// named sections with key=value entries.
//
//   # comment
//   [node gw-acc]
//   kind = sr-gateway
//   addr = 2001:db8:100::1
//   binding = gtp6d 2001:db8:100::d/128
//
// Section headers carry at most one argument (the object's name). Keys may
// repeat where the grammar says so (addr, binding). A '#' preceded by start
// of line or whitespace starts a comment; binary payloads use payload-hex.

namespace srvsim::cfg {

struct ParseError {
  std::string file;
  int line = 0;
  std::string message;

  std::string str() const {
    std::ostringstream out;
    out << file << ":" << line << ": " << message;
    return out.str();
  }
};

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string kind;
  std::string arg;
  int line = 0;
  std::vector<Entry> entries;

  const Entry* find(const std::string& key) const {
    for (const auto& e : entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }
  std::vector<const Entry*> all(const std::string& key) const {
    std::vector<const Entry*> out;
    for (const auto& e : entries) {
      if (e.key == key) out.push_back(&e);
    }
    return out;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string strip_comment(const std::string& s) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '#' && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t')) {
      return s.substr(0, i);
    }
  }
  return s;
}

inline std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

}  // namespace detail

inline Result<std::vector<Section>, std::vector<ParseError>> parse_sections(
    const std::string& text, const std::string& file) {
  std::vector<Section> sections;
  std::vector<ParseError> errors;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back({file, line_no, "unterminated section header"});
        continue;
      }
      auto words = detail::split_words(line.substr(1, line.size() - 2));
      if (words.empty() || words.size() > 2) {
        errors.push_back({file, line_no, "section header needs a kind and at most one name"});
        continue;
      }
      Section s;
      s.kind = words[0];
      if (words.size() == 2) s.arg = words[1];
      s.line = line_no;
      sections.push_back(std::move(s));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back({file, line_no, "expected key = value"});
      continue;
    }
    if (sections.empty()) {
      errors.push_back({file, line_no, "entry outside any section"});
      continue;
    }
    Entry e;
    e.key = detail::trim(line.substr(0, eq));
    e.value = detail::trim(line.substr(eq + 1));
    e.line = line_no;
    if (e.key.empty()) {
      errors.push_back({file, line_no, "empty key"});
      continue;
    }
    sections.back().entries.push_back(std::move(e));
  }
  if (!errors.empty()) return errors;
  return sections;
}

// --- typed value readers ------------------------------------------------------

class ErrorSink {
 public:
  ErrorSink(std::string file, std::vector<ParseError>& errors)
      : file_(std::move(file)), errors_(errors) {}

  void add(int line, const std::string& message) {
    errors_.push_back({file_, line, message});
  }
  const std::string& file() const { return file_; }

 private:
  std::string file_;
  std::vector<ParseError>& errors_;
};

inline std::optional<uint64_t> read_u64(const Entry& e, ErrorSink& sink) {
  try {
    size_t pos = 0;
    uint64_t v = std::stoull(e.value, &pos, 0);
    if (pos != e.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    sink.add(e.line, "'" + e.key + "' is not a number: " + e.value);
    return std::nullopt;
  }
}

inline std::optional<Ipv6Address> read_addr(const Entry& e, ErrorSink& sink) {
  auto a = Ipv6Address::parse(e.value);
  if (!a) sink.add(e.line, "'" + e.key + "' is not an IPv6 address: " + e.value);
  return a;
}

inline std::optional<Prefix> read_prefix(const std::string& text, int line,
                                         const std::string& key, ErrorSink& sink) {
  auto p = Prefix::parse(text);
  if (!p) sink.add(line, "'" + key + "' is not an IPv6 prefix: " + text);
  return p;
}

inline std::optional<SegmentList> read_path(const Entry& e, ErrorSink& sink,
                                            bool allow_empty = false) {
  SegmentList path;
  for (const auto& word : detail::split_words(e.value)) {
    auto a = Ipv6Address::parse(word);
    if (!a) {
      sink.add(e.line, "'" + e.key + "' has a bad address: " + word);
      return std::nullopt;
    }
    path.push_back(*a);
  }
  if (path.empty() && !allow_empty) {
    sink.add(e.line, "'" + e.key + "' must list at least one segment");
    return std::nullopt;
  }
  return path;
}

inline std::optional<bool> read_bool(const Entry& e, ErrorSink& sink) {
  if (e.value == "on" || e.value == "true" || e.value == "yes") return true;
  if (e.value == "off" || e.value == "false" || e.value == "no") return false;
  sink.add(e.line, "'" + e.key + "' must be on/off: " + e.value);
  return std::nullopt;
}

// Rejects typo'd keys; every diagnostic carries the file and line.
inline void check_keys(const Section& s, std::initializer_list<const char*> allowed,
                       ErrorSink& sink) {
  for (const auto& e : s.entries) {
    bool ok = false;
    for (const char* k : allowed) ok |= (e.key == k);
    if (!ok) sink.add(e.line, "unknown key '" + e.key + "' in [" + s.kind + "]");
  }
}

// --- configuration document ---------------------------------------------------

struct ConfigDocument {
  std::string file;
  sim::Topology topology;
  pfcp::InstancePolicy policy;
  std::vector<sim::SessionDef> sessions;  // pre-established at tick 0
  std::vector<sim::StaticRule> static_rules;
};

namespace detail {

inline std::optional<sim::NodeKind> parse_node_kind(const std::string& s) {
  if (s == "ue") return sim::NodeKind::Ue;
  if (s == "gnb") return sim::NodeKind::Gnb;
  if (s == "sr-gateway") return sim::NodeKind::SrGateway;
  if (s == "sr-transit") return sim::NodeKind::SrTransit;
  if (s == "edge-host") return sim::NodeKind::EdgeHost;
  if (s == "controller") return sim::NodeKind::Controller;
  if (s == "smf") return sim::NodeKind::Smf;
  return std::nullopt;
}

inline std::optional<BehaviorKind> parse_behavior_kind(const std::string& s) {
  if (s == "end") return BehaviorKind::End;
  if (s == "gtp6d") return BehaviorKind::EndMGtp6D;
  if (s == "gtp6e") return BehaviorKind::EndMGtp6E;
  if (s == "dt4") return BehaviorKind::EndDt4;
  if (s == "dt6") return BehaviorKind::EndDt6;
  return std::nullopt;
}

inline void load_node(const Section& s, ConfigDocument& doc, ErrorSink& sink) {
  check_keys(s, {"kind", "addr", "binding", "attach", "echo"}, sink);
  if (s.arg.empty()) {
    sink.add(s.line, "[node] needs a name");
    return;
  }
  sim::NodeSpec node;
  node.id = s.arg;
  const Entry* kind = s.find("kind");
  if (!kind) {
    sink.add(s.line, "[node " + s.arg + "] needs kind =");
    return;
  }
  auto k = parse_node_kind(kind->value);
  if (!k) {
    sink.add(kind->line, "unknown node kind: " + kind->value);
    return;
  }
  node.kind = *k;
  for (const Entry* e : s.all("addr")) {
    if (auto a = read_addr(*e, sink)) node.addrs.push_back(*a);
  }
  for (const Entry* e : s.all("binding")) {
    auto words = split_words(e->value);
    if (words.size() != 2) {
      sink.add(e->line, "binding wants '<kind> <prefix>'");
      continue;
    }
    auto bk = parse_behavior_kind(words[0]);
    if (!bk) {
      sink.add(e->line, "unknown behavior kind: " + words[0]);
      continue;
    }
    auto prefix = read_prefix(words[1], e->line, "binding", sink);
    if (!prefix) continue;
    node.bindings.push_back(BehaviorBinding{*prefix, *bk});
  }
  if (const Entry* e = s.find("attach")) node.attached_to = e->value;
  if (const Entry* e = s.find("echo")) {
    if (auto b = read_bool(*e, sink)) node.echo = *b;
  }
  doc.topology.nodes.push_back(std::move(node));
}

inline void load_link(const Section& s, ConfigDocument& doc, ErrorSink& sink) {
  check_keys(s, {"ends", "delay"}, sink);
  const Entry* ends = s.find("ends");
  if (!ends) {
    sink.add(s.line, "[link] needs ends = <a> <b>");
    return;
  }
  auto words = split_words(ends->value);
  if (words.size() != 2) {
    sink.add(ends->line, "ends wants exactly two node names");
    return;
  }
  sim::LinkSpec link{words[0], words[1], 1};
  if (const Entry* d = s.find("delay")) {
    if (auto v = read_u64(*d, sink)) link.delay = *v;
  }
  doc.topology.links.push_back(link);
}

inline void load_policy(const Section& s, ConfigDocument& doc, ErrorSink& sink) {
  check_keys(s, {"dn-gateway", "uplink-path", "downlink-path"}, sink);
  if (s.arg.empty()) {
    sink.add(s.line, "[policy] needs a slice name");
    return;
  }
  pfcp::SlicePolicy policy;
  const Entry* gw = s.find("dn-gateway");
  const Entry* up = s.find("uplink-path");
  if (!gw || !up) {
    sink.add(s.line, "[policy " + s.arg + "] needs dn-gateway = and uplink-path =");
    return;
  }
  policy.dn_gateway = gw->value;
  if (auto path = read_path(*up, sink)) policy.uplink_path = *path;
  if (const Entry* down = s.find("downlink-path")) {
    if (auto path = read_path(*down, sink, /*allow_empty=*/true)) {
      policy.downlink_transit = *path;
    }
  }
  doc.policy.slices[s.arg] = std::move(policy);
}

inline std::optional<sim::SessionDef> load_session(const Section& s, ErrorSink& sink) {
  check_keys(s, {"ue", "slice", "uplink-teid", "downlink-teid", "qfi", "ue-ip"}, sink);
  if (s.arg.empty()) {
    sink.add(s.line, "[session] needs a name");
    return std::nullopt;
  }
  sim::SessionDef def;
  def.name = s.arg;
  const Entry* ue = s.find("ue");
  const Entry* slice = s.find("slice");
  const Entry* ut = s.find("uplink-teid");
  const Entry* dt = s.find("downlink-teid");
  const Entry* qfi = s.find("qfi");
  if (!ue || !slice || !ut || !dt || !qfi) {
    sink.add(s.line, "[session " + s.arg +
                         "] needs ue, slice, uplink-teid, downlink-teid, qfi");
    return std::nullopt;
  }
  def.ue = ue->value;
  def.slice = slice->value;
  if (auto v = read_u64(*ut, sink)) def.uplink_teid = static_cast<uint32_t>(*v);
  if (auto v = read_u64(*dt, sink)) def.downlink_teid = static_cast<uint32_t>(*v);
  if (auto v = read_u64(*qfi, sink)) {
    if (*v > 63) {
      sink.add(qfi->line, "qfi must be < 64");
    } else {
      def.qfi = static_cast<uint8_t>(*v);
    }
  }
  if (const Entry* ip = s.find("ue-ip")) {
    if (auto a = read_addr(*ip, sink)) def.ue_ip = *a;
  }
  return def;
}

inline void load_rule(const Section& s, ConfigDocument& doc, ErrorSink& sink) {
  check_keys(s, {"gateway", "kind", "id", "priority", "teid", "qfi", "inner-src",
                 "ue-prefix", "path"},
             sink);
  const Entry* gw = s.find("gateway");
  const Entry* kind = s.find("kind");
  const Entry* path = s.find("path");
  if (!gw || !kind || !path) {
    sink.add(s.line, "[rule] needs gateway =, kind =, path =");
    return;
  }
  auto segments = read_path(*path, sink);
  if (!segments) return;
  steering::RuleId id = 1000000000 + doc.static_rules.size();
  if (const Entry* e = s.find("id")) {
    if (auto v = read_u64(*e, sink)) id = *v;
  }
  if (kind->value == "uplink") {
    steering::UplinkRule rule;
    rule.id = id;
    rule.action = *segments;
    const Entry* teid = s.find("teid");
    if (!teid) {
      sink.add(s.line, "uplink [rule] needs teid =");
      return;
    }
    if (auto v = read_u64(*teid, sink)) rule.match.teid = static_cast<uint32_t>(*v);
    if (const Entry* e = s.find("qfi")) {
      if (auto v = read_u64(*e, sink)) rule.match.qfi = static_cast<uint8_t>(*v);
    }
    if (const Entry* e = s.find("inner-src")) {
      rule.match.inner_src = read_prefix(e->value, e->line, "inner-src", sink);
    }
    if (const Entry* e = s.find("priority")) {
      if (auto v = read_u64(*e, sink)) rule.priority = static_cast<int>(*v);
    }
    doc.static_rules.push_back(sim::StaticRule{gw->value, rule});
  } else if (kind->value == "downlink") {
    steering::DownlinkRule rule;
    rule.id = id;
    rule.action = *segments;
    const Entry* ue_prefix = s.find("ue-prefix");
    if (!ue_prefix) {
      sink.add(s.line, "downlink [rule] needs ue-prefix =");
      return;
    }
    if (auto p = read_prefix(ue_prefix->value, ue_prefix->line, "ue-prefix", sink)) {
      rule.ue_prefix = *p;
    }
    doc.static_rules.push_back(sim::StaticRule{gw->value, rule});
  } else {
    sink.add(kind->line, "rule kind must be uplink or downlink");
  }
}

inline void validate_config(const ConfigDocument& doc,
                            const std::vector<Section>& sections, ErrorSink& sink) {
  const sim::Topology& topo = doc.topology;
  size_t controllers = 0;
  size_t smfs = 0;
  for (const auto& n : topo.nodes) {
    if (n.kind == sim::NodeKind::Controller) ++controllers;
    if (n.kind == sim::NodeKind::Smf) ++smfs;
  }
  auto section_line = [&sections](const std::string& kind, const std::string& arg) {
    for (const auto& s : sections) {
      if (s.kind == kind && s.arg == arg) return s.line;
    }
    return 0;
  };
  if (controllers != 1) {
    sink.add(0, "config needs exactly one controller node, found " +
                    std::to_string(controllers));
  }
  if (smfs != 1) {
    sink.add(0, "config needs exactly one smf node, found " + std::to_string(smfs));
  }
  for (const auto& l : topo.links) {
    if (!topo.find(l.a)) sink.add(0, "link references unknown node: " + l.a);
    if (!topo.find(l.b)) sink.add(0, "link references unknown node: " + l.b);
  }
  for (const auto& n : topo.nodes) {
    if (n.attached_to.empty()) continue;
    if (!topo.find(n.attached_to)) {
      sink.add(section_line("node", n.id),
               n.id + " attaches to unknown node: " + n.attached_to);
    }
  }
  for (const auto& [slice, policy] : doc.policy.slices) {
    const sim::NodeSpec* gw = topo.find(policy.dn_gateway);
    if (!gw || gw->kind != sim::NodeKind::SrGateway) {
      sink.add(section_line("policy", slice),
               "policy " + slice + " names unknown gateway: " + policy.dn_gateway);
    }
  }
  for (const auto& def : doc.sessions) {
    const sim::NodeSpec* ue = topo.find(def.ue);
    if (!ue || ue->kind != sim::NodeKind::Ue) {
      sink.add(section_line("session", def.name),
               "session " + def.name + " names unknown UE: " + def.ue);
    }
    if (!doc.policy.slices.count(def.slice)) {
      sink.add(section_line("session", def.name),
               "session " + def.name + " names unknown slice: " + def.slice);
    }
  }
  for (const auto& r : doc.static_rules) {
    const sim::NodeSpec* gw = topo.find(r.gateway);
    if (!gw || gw->kind != sim::NodeKind::SrGateway) {
      sink.add(0, "rule names unknown gateway: " + r.gateway);
    }
  }
}

}  // namespace detail

// Parses and semantically validates a configuration document. Any error is
// reported with its file and line.
inline Result<ConfigDocument, std::vector<ParseError>> load_config(
    const std::string& text, const std::string& file) {
  auto sections = parse_sections(text, file);
  if (!sections.ok()) return sections.error();
  std::vector<ParseError> errors;
  ErrorSink sink(file, errors);
  ConfigDocument doc;
  doc.file = file;
  for (const auto& s : sections.value()) {
    if (s.kind == "node") {
      detail::load_node(s, doc, sink);
    } else if (s.kind == "link") {
      detail::load_link(s, doc, sink);
    } else if (s.kind == "policy") {
      detail::load_policy(s, doc, sink);
    } else if (s.kind == "session") {
      if (auto def = detail::load_session(s, sink)) doc.sessions.push_back(*def);
    } else if (s.kind == "rule") {
      detail::load_rule(s, doc, sink);
    } else {
      sink.add(s.line, "unknown section kind: [" + s.kind + "]");
    }
  }
  detail::validate_config(doc, sections.value(), sink);
  if (!errors.empty()) return errors;
  return doc;
}

}  // namespace srvsim::cfg

#endif  // SRVSIM_CONFIG_HPP_
