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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "srvsim/config.hpp"
#include "srvsim/runner.hpp"
#include "srvsim/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssertionFailure = 1;
constexpr int kExitInputError = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void print_errors(const std::vector<srvsim::cfg::ParseError>& errors) {
  for (const auto& e : errors) std::cerr << e.str() << "\n";
}

int cmd_validate(const std::string& config_path) {
  auto text = read_file(config_path);
  if (!text) {
    std::cerr << config_path << ": cannot read file\n";
    return kExitInputError;
  }
  auto config = srvsim::cfg::load_config(*text, config_path);
  if (!config.ok()) {
    print_errors(config.error());
    return kExitInputError;
  }
  std::cout << config_path << ": ok (" << config->topology.nodes.size() << " nodes, "
            << config->topology.links.size() << " links, "
            << config->policy.slices.size() << " slices, "
            << config->sessions.size() << " sessions, "
            << config->static_rules.size() << " static rules)\n";
  return kExitPass;
}

int cmd_run(const std::string& config_path, const std::string& scenario_path,
            const std::string& trace_path, bool hex, uint64_t max_ticks) {
  auto config_text = read_file(config_path);
  if (!config_text) {
    std::cerr << config_path << ": cannot read file\n";
    return kExitInputError;
  }
  auto scenario_text = read_file(scenario_path);
  if (!scenario_text) {
    std::cerr << scenario_path << ": cannot read file\n";
    return kExitInputError;
  }
  auto config = srvsim::cfg::load_config(*config_text, config_path);
  if (!config.ok()) {
    print_errors(config.error());
    return kExitInputError;
  }
  auto scenario = srvsim::cfg::load_scenario(*scenario_text, scenario_path);
  if (!scenario.ok()) {
    print_errors(scenario.error());
    return kExitInputError;
  }
  auto report = srvsim::runner::run(config.value(), scenario.value(), max_ticks);
  if (!report.ok()) {
    print_errors(report.error());
    return kExitInputError;
  }
  std::cout << report->render();
  if (!trace_path.empty()) {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) {
      std::cerr << trace_path << ": cannot write trace\n";
      return kExitInputError;
    }
    out << srvsim::runner::export_trace(report.value(), hex);
    std::cout << "trace: " << report->trace.size() << " events -> " << trace_path
              << "\n";
  }
  return report->passed() ? kExitPass : kExitAssertionFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"srvsim: SRv6 mobile user-plane simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string scenario_path;
  std::string trace_path;
  bool hex = false;
  uint64_t max_ticks = 10000;

  CLI::App* validate = app.add_subcommand("validate", "check a configuration file");
  validate->add_option("config", config_path, "configuration file")->required();

  CLI::App* run = app.add_subcommand("run", "run a scenario and evaluate assertions");
  run->add_option("config", config_path, "configuration file")->required();
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("--trace", trace_path, "write the event trace to this file");
  run->add_flag("--hex", hex, "append raw packet hex to each trace line");
  run->add_option("--max-ticks", max_ticks, "virtual-time budget for the run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInputError;
  }

  if (validate->parsed()) return cmd_validate(config_path);
  return cmd_run(config_path, scenario_path, trace_path, hex, max_ticks);
}
