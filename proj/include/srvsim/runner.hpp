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

#ifndef SRVSIM_RUNNER_HPP_
#define SRVSIM_RUNNER_HPP_

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "srvsim/config.hpp"
#include "srvsim/scenario.hpp"
#include "srvsim/sim/simulator.hpp"

namespace srvsim::runner {

struct AssertionResult {
  bool pass = false;
  std::string description;
  std::vector<std::string> evidence;
};

struct RunReport {
  std::vector<AssertionResult> assertions;
  std::vector<sim::TraceEvent> trace;
  std::optional<std::string> run_error;
  sim::ConservationCounters conservation;
  sim::StateCensus census;

  bool passed() const {
    if (run_error) return false;
    for (const auto& a : assertions) {
      if (!a.pass) return false;
    }
    return true;
  }

  std::string render() const {
    std::ostringstream out;
    size_t ok = 0;
    for (size_t i = 0; i < assertions.size(); ++i) {
      const AssertionResult& a = assertions[i];
      if (a.pass) ++ok;
      out << "assert " << (i + 1) << ": " << a.description << " ... "
          << (a.pass ? "PASS" : "FAIL") << "\n";
      for (const auto& ev : a.evidence) out << "    " << ev << "\n";
    }
    if (run_error) out << "run error: " << *run_error << "\n";
    out << "result: " << (passed() ? "PASS" : "FAIL") << " (" << ok << "/"
        << assertions.size() << " assertions)"
        << " originated=" << conservation.originated
        << " delivered=" << conservation.delivered
        << " dropped=" << conservation.dropped << "\n";
    return out.str();
  }
};

namespace detail {

inline std::optional<sim::NodeKind> parse_census_kind(const std::string& s) {
  return cfg::detail::parse_node_kind(s);
}

inline bool trace_matches(const sim::TraceEvent& e, const cfg::Assertion& a,
                          sim::TraceAction action) {
  if (e.action != action) return false;
  if (e.node != a.node) return false;
  if (a.after && e.time <= *a.after) return false;
  if (a.payload_hash && e.summary.payload_hash != *a.payload_hash) return false;
  if (a.teid && e.summary.teid != *a.teid) return false;
  if (a.qfi && e.summary.qfi != *a.qfi) return false;
  return true;
}

inline AssertionResult evaluate(const cfg::Assertion& a, const RunReport& report) {
  AssertionResult result;
  result.description = a.describe();
  auto count_action = [&](sim::TraceAction action, bool check_reason) {
    size_t n = 0;
    for (const auto& e : report.trace) {
      if (!trace_matches(e, a, action)) continue;
      if (check_reason && e.detail != a.reason) continue;
      ++n;
      if (result.evidence.size() < 4) {
        result.evidence.push_back(sim::format_trace_line(e));
      }
    }
    return n;
  };
  auto within = [&a](size_t n, size_t default_min) {
    // min defaults to 1, or to 0 when the assertion only bounds from above.
    size_t lo = a.min.value_or(a.max ? 0 : default_min);
    if (n < lo) return false;
    if (a.max && n > *a.max) return false;
    return true;
  };
  switch (a.kind) {
    case cfg::Assertion::Kind::DeliveredAt: {
      size_t n = count_action(sim::TraceAction::Deliver, false);
      result.pass = within(n, 1);
      if (!result.pass) {
        result.evidence.push_back("matched " + std::to_string(n) + " deliveries");
      }
      break;
    }
    case cfg::Assertion::Kind::NotDeliveredAt: {
      size_t n = count_action(sim::TraceAction::Deliver, false);
      result.pass = n == 0;
      if (!result.pass) {
        result.evidence.push_back("matched " + std::to_string(n) + " deliveries");
      }
      break;
    }
    case cfg::Assertion::Kind::DroppedWithReason: {
      size_t n = count_action(sim::TraceAction::Drop, true);
      result.pass = within(n, 1);
      if (!result.pass) {
        result.evidence.push_back("matched " + std::to_string(n) + " drops");
      }
      break;
    }
    case cfg::Assertion::Kind::TraceVisitsNode: {
      size_t n = 0;
      for (const auto& e : report.trace) {
        if (e.node != a.node) continue;
        if (a.after && e.time <= *a.after) continue;
        if (e.action == sim::TraceAction::RuleUpdate) continue;
        if (a.payload_hash && e.summary.payload_hash != *a.payload_hash) continue;
        if (a.teid && e.summary.teid != *a.teid) continue;
        if (a.qfi && e.summary.qfi != *a.qfi) continue;
        ++n;
        if (result.evidence.size() < 4) {
          result.evidence.push_back(sim::format_trace_line(e));
        }
      }
      result.pass = within(n, 1);
      if (!result.pass) {
        result.evidence.push_back("node visited " + std::to_string(n) + " times");
      }
      break;
    }
    case cfg::Assertion::Kind::Census: {
      auto kind = parse_census_kind(a.node_kind);
      if (!kind) {
        result.pass = false;
        result.evidence.push_back("unknown node kind: " + a.node_kind);
        break;
      }
      size_t state = report.census.state_entries(*kind);
      result.pass = true;
      if (a.min_state && state < *a.min_state) result.pass = false;
      if (a.max_state && state > *a.max_state) result.pass = false;
      result.evidence.push_back(a.node_kind + " state entries: " + std::to_string(state));
      break;
    }
  }
  return result;
}

inline std::optional<Ipv6Address> ue_address(const sim::Topology& topo,
                                             const std::string& ue) {
  const sim::NodeSpec* node = topo.find(ue);
  if (!node || node->kind != sim::NodeKind::Ue || node->addrs.empty()) {
    return std::nullopt;
  }
  return node->addrs[0];
}

}  // namespace detail

// Builds the simulator from the configuration, schedules the scenario, runs
// to idle and evaluates every assertion. Input problems come back as parse
// errors with locations; assertion outcomes live in the report.
inline Result<RunReport, std::vector<cfg::ParseError>> run(
    const cfg::ConfigDocument& config, const cfg::Scenario& scenario,
    uint64_t max_ticks = 10000) {
  std::vector<cfg::ParseError> errors;
  auto fail = [&errors](const std::string& file, int line, const std::string& msg) {
    errors.push_back({file, line, msg});
  };

  sim::Simulator::BuildInput input;
  input.topology = config.topology;
  input.policy = config.policy;
  input.static_rules = config.static_rules;
  auto built = sim::Simulator::build(std::move(input));
  if (!built.ok()) {
    fail(config.file, 0, std::string("topology: ") + to_string(built.error().kind) +
                             ": " + built.error().detail);
    return errors;
  }
  sim::Simulator& sim = *built.value();

  for (const auto& def : config.sessions) {
    auto r = sim.schedule_establish(0, def);
    if (!r.ok()) fail(config.file, 0, "session " + def.name + ": " + r.error());
  }

  auto find_session = [&](const std::string& name) -> const sim::SessionDef* {
    for (const auto& def : scenario.sessions) {
      if (def.name == name) return &def;
    }
    for (const auto& def : config.sessions) {
      if (def.name == name) return &def;
    }
    return nullptr;
  };

  std::vector<cfg::TimedEvent> events = scenario.events;
  std::stable_sort(events.begin(), events.end(),
                   [](const cfg::TimedEvent& a, const cfg::TimedEvent& b) {
                     return a.time < b.time;
                   });
  for (const auto& event : events) {
    auto on_error = [&](const std::string& msg) { fail(scenario.file, event.line, msg); };
    if (const auto* e = std::get_if<cfg::EstablishSpec>(&event.spec)) {
      const sim::SessionDef* def = find_session(e->session);
      if (!def) {
        on_error("unknown session: " + e->session);
        continue;
      }
      auto r = sim.schedule_establish(event.time, *def);
      if (!r.ok()) on_error(r.error());
    } else if (const auto* e = std::get_if<cfg::ModifySpec>(&event.spec)) {
      sim::EvSessionModify ev;
      ev.session = e->session;
      ev.gnb = e->gnb;
      ev.downlink_teid = e->downlink_teid;
      ev.qfi = e->qfi;
      auto r = sim.schedule_modify(event.time, std::move(ev));
      if (!r.ok()) on_error(r.error());
    } else if (const auto* e = std::get_if<cfg::DeleteSpec>(&event.spec)) {
      auto r = sim.schedule_delete(event.time, e->session);
      if (!r.ok()) on_error(r.error());
    } else if (const auto* e = std::get_if<cfg::InjectSpec>(&event.spec)) {
      auto r = sim.schedule_inject(event.time, e->ue, e->session, *e->dst, e->payload);
      if (!r.ok()) on_error(r.error());
    } else if (const auto* e = std::get_if<cfg::InjectDownlinkSpec>(&event.spec)) {
      std::optional<Ipv6Address> ue_ip = e->ue_ip;
      if (!ue_ip && e->ue) ue_ip = detail::ue_address(config.topology, *e->ue);
      if (!ue_ip) {
        on_error("inject-downlink cannot resolve the UE address");
        continue;
      }
      auto r = sim.schedule_inject_downlink(event.time, e->host, *ue_ip, e->src,
                                            e->payload);
      if (!r.ok()) on_error(r.error());
    } else if (const auto* e = std::get_if<cfg::HandoverSpec>(&event.spec)) {
      auto r = sim.schedule_handover(event.time, e->ue, e->to_gnb, e->downlink_teid);
      if (!r.ok()) on_error(r.error());
    } else if (const auto* e = std::get_if<cfg::PolicyUpdateSpec>(&event.spec)) {
      auto r = sim.schedule_policy_update(event.time, e->slice, e->policy);
      if (!r.ok()) on_error(r.error());
    }
  }

  // Assertion targets must exist before we bother running.
  for (const auto& a : scenario.assertions) {
    if (a.kind == cfg::Assertion::Kind::Census) {
      if (!detail::parse_census_kind(a.node_kind)) {
        fail(scenario.file, a.line, "unknown node kind: " + a.node_kind);
      }
    } else if (!config.topology.find(a.node)) {
      fail(scenario.file, a.line, "assertion names unknown node: " + a.node);
    }
  }
  if (!errors.empty()) return errors;

  RunReport report;
  auto r = sim.run_until_idle(max_ticks);
  if (!r.ok()) {
    report.run_error = "tick limit " + std::to_string(max_ticks) +
                       " exceeded with events pending (forwarding loop?)";
  }
  report.trace = sim.trace();
  report.conservation = sim.conservation();
  report.census = sim.snapshot_state();
  for (const auto& a : scenario.assertions) {
    report.assertions.push_back(detail::evaluate(a, report));
  }
  return report;
}

inline std::string export_trace(const RunReport& report, bool hex = false) {
  return sim::format_trace(report.trace, hex);
}

}  // namespace srvsim::runner

#endif  // SRVSIM_RUNNER_HPP_
