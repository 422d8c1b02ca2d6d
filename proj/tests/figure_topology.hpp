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

// Shared test fixture: the canonical edge-access topology. Two UEs behind
// three gNBs, one access gateway, two transit routers, three DN gateways
// hosting instances s0 (central), s1 and s2 (edge), plus controller and SMF.
// The service address 2001:db8:5::5 is anycast across the instances; which
// one answers is purely a steering decision.

#ifndef SRVSIM_TESTS_FIGURE_TOPOLOGY_HPP_
#define SRVSIM_TESTS_FIGURE_TOPOLOGY_HPP_

#include <string>

#include "srvsim/sim/simulator.hpp"
#include "srvsim/sim/topology.hpp"

namespace srvsim::testing {

inline Ipv6Address A(const std::string& s) { return *Ipv6Address::parse(s); }
inline Prefix P(const std::string& s) { return *Prefix::parse(s); }

inline const char* kServiceAddr = "2001:db8:5::5";

inline sim::Topology figure_topology() {
  using sim::NodeKind;
  sim::Topology t;
  t.nodes.reserve(20);  // references below must stay valid while fields are set
  auto node = [&t](std::string id, NodeKind kind) -> sim::NodeSpec& {
    t.nodes.push_back(sim::NodeSpec{});
    t.nodes.back().id = std::move(id);
    t.nodes.back().kind = kind;
    return t.nodes.back();
  };

  auto& uea = node("uea", NodeKind::Ue);
  uea.addrs = {A("2001:db8:1::a")};
  uea.attached_to = "gnb3";
  auto& ueb = node("ueb", NodeKind::Ue);
  ueb.addrs = {A("2001:db8:1::b")};
  ueb.attached_to = "gnb1";

  auto& gnb1 = node("gnb1", NodeKind::Gnb);
  gnb1.addrs = {A("2001:db8:a1::1")};
  gnb1.attached_to = "gw-acc";
  auto& gnb2 = node("gnb2", NodeKind::Gnb);
  gnb2.addrs = {A("2001:db8:a2::1")};
  gnb2.attached_to = "gw-acc";
  auto& gnb3 = node("gnb3", NodeKind::Gnb);
  gnb3.addrs = {A("2001:db8:a3::1")};
  gnb3.attached_to = "gw-acc";

  auto& acc = node("gw-acc", NodeKind::SrGateway);
  acc.addrs = {A("2001:db8:100::1")};
  acc.bindings = {
      BehaviorBinding{P("2001:db8:100::d/128"), BehaviorKind::EndMGtp6D},
      BehaviorBinding{P("2001:db8:100:e::/64"), BehaviorKind::EndMGtp6E},
  };

  auto& t1 = node("t1", NodeKind::SrTransit);
  t1.bindings = {BehaviorBinding{P("2001:db8:101::/64"), BehaviorKind::End}};
  auto& t2 = node("t2", NodeKind::SrTransit);
  t2.bindings = {BehaviorBinding{P("2001:db8:102::/64"), BehaviorKind::End}};

  auto& dn0 = node("gw-dn0", NodeKind::SrGateway);
  dn0.addrs = {A("2001:db8:200::1")};
  dn0.bindings = {BehaviorBinding{P("2001:db8:200::d6/128"), BehaviorKind::EndDt6}};
  auto& dn1 = node("gw-dn1", NodeKind::SrGateway);
  dn1.addrs = {A("2001:db8:201::1")};
  dn1.bindings = {BehaviorBinding{P("2001:db8:201::d6/128"), BehaviorKind::EndDt6}};
  auto& dn2 = node("gw-dn2", NodeKind::SrGateway);
  dn2.addrs = {A("2001:db8:202::1")};
  dn2.bindings = {BehaviorBinding{P("2001:db8:202::d6/128"), BehaviorKind::EndDt6}};

  auto& s0 = node("s0", NodeKind::EdgeHost);
  s0.addrs = {A("2001:db8:300::10"), A(kServiceAddr)};
  s0.attached_to = "gw-dn0";
  auto& s1 = node("s1", NodeKind::EdgeHost);
  s1.addrs = {A("2001:db8:301::10"), A(kServiceAddr)};
  s1.attached_to = "gw-dn1";
  auto& s2 = node("s2", NodeKind::EdgeHost);
  s2.addrs = {A("2001:db8:302::10"), A(kServiceAddr)};
  s2.attached_to = "gw-dn2";

  auto& ctrl = node("ctrl", NodeKind::Controller);
  ctrl.addrs = {A("2001:db8:ff::c0")};
  auto& smf = node("smf", NodeKind::Smf);
  smf.addrs = {A("2001:db8:ff::5f")};

  t.links = {
      {"uea", "gnb3", 1},   {"ueb", "gnb1", 1},   {"ueb", "gnb2", 1},
      {"gnb1", "gw-acc", 1}, {"gnb2", "gw-acc", 1}, {"gnb3", "gw-acc", 1},
      {"gw-acc", "t1", 1},  {"t1", "t2", 1},      {"t1", "gw-dn0", 3},
      {"t1", "gw-dn1", 1},  {"t2", "gw-dn2", 1},  {"gw-dn0", "s0", 1},
      {"gw-dn1", "s1", 1},  {"gw-dn2", "s2", 1},  {"smf", "ctrl", 1},
  };  // the central DN (gw-dn0) sits farther out than the edge DNs
  return t;
}

inline pfcp::InstancePolicy figure_policy() {
  pfcp::InstancePolicy policy;
  policy.slices["sliceA"] = pfcp::SlicePolicy{
      "gw-dn1", {A("2001:db8:101::e"), A("2001:db8:201::d6")}, {}};
  policy.slices["sliceB"] = pfcp::SlicePolicy{"gw-dn0", {A("2001:db8:200::d6")}, {}};
  return policy;
}

inline sim::SessionDef session_a() {
  sim::SessionDef def;
  def.name = "sessA";
  def.ue = "ueb";
  def.slice = "sliceA";
  def.uplink_teid = 100;
  def.downlink_teid = 1100;
  def.qfi = 9;
  return def;
}

inline sim::SessionDef session_b() {
  sim::SessionDef def;
  def.name = "sessB";
  def.ue = "ueb";
  def.slice = "sliceB";
  def.uplink_teid = 101;
  def.downlink_teid = 1101;
  def.qfi = 8;
  return def;
}

inline Result<std::unique_ptr<sim::Simulator>, sim::BuildError> figure_simulator() {
  sim::Simulator::BuildInput input;
  input.topology = figure_topology();
  input.policy = figure_policy();
  return sim::Simulator::build(std::move(input));
}

}  // namespace srvsim::testing

#endif  // SRVSIM_TESTS_FIGURE_TOPOLOGY_HPP_
