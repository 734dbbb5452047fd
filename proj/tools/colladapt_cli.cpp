// Copyright 2026 The colladapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario runner: replays a mission scenario through the adaptation engine.
//
//   colladapt run <file> --out <dir> [--policy dispersion|distance] [--e-min N]
//                        [--format graphml|dot|both] [--report table|machine]
//   colladapt validate <file>
//   colladapt oracle <file>
//
// Exit codes: 0 success, 1 input error, 2 a phase ended degraded (run) or the
// oracle disagreed (oracle).

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "colladapt/model.hpp"
#include "colladapt/scenario.hpp"

namespace {

int report_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-communication reconfiguration for mission scenarios"};
  app.require_subcommand(1);

  std::string file;
  std::string out_dir = "out";
  std::string policy;
  int e_min = -1;
  std::string format = "graphml";
  std::string report = "table";

  auto* run_cmd = app.add_subcommand("run", "Replay a scenario and write snapshots and a placement report");
  run_cmd->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run_cmd->add_option("--policy", policy, "Adaptation tie-break policy")
      ->check(CLI::IsMember({"dispersion", "distance"}));
  run_cmd->add_option("--e-min", e_min, "Minimum CM host energy")->check(CLI::Range(0, 100));
  run_cmd->add_option("--format", format, "Snapshot format")
      ->check(CLI::IsMember({"graphml", "dot", "both"}))
      ->capture_default_str();
  run_cmd->add_option("--report", report, "Report format")
      ->check(CLI::IsMember({"table", "machine"}))
      ->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "Parse a scenario and report model violations");
  validate_cmd->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);

  auto* oracle_cmd = app.add_subcommand("oracle", "Compare every selection with the brute-force reference");
  oracle_cmd->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  colladapt::Scenario scenario;
  try {
    scenario = colladapt::load_scenario(file);
  } catch (const std::exception& e) {
    return report_error(e);
  }

  if (*validate_cmd) {
    std::cout << file << ": " << scenario.model.actors.size() << " actors, " << scenario.model.devices.size()
              << " devices, " << scenario.events.size() << " events: ok\n";
    return 0;
  }

  colladapt::RunOptions options;
  if (!policy.empty()) options.policy = colladapt::parse_policy_kind(policy);
  if (e_min >= 0) options.e_min = e_min;

  if (*oracle_cmd) {
    try {
      bool all = true;
      for (const auto& c : colladapt::check_against_oracle(scenario, options)) {
        std::cout << (c.agrees ? "agree    " : "DISAGREE ") << c.label << "  " << c.detail << "\n";
        all = all && c.agrees;
      }
      return all ? 0 : 2;
    } catch (const std::exception& e) {
      return report_error(e);
    }
  }

  static const std::map<std::string, colladapt::OutputFormat> kFormats{
      {"graphml", colladapt::OutputFormat::GraphML},
      {"dot", colladapt::OutputFormat::Dot},
      {"both", colladapt::OutputFormat::Both},
  };
  options.format = kFormats.at(format);
  options.report = report == "machine" ? colladapt::ReportFormat::Machine : colladapt::ReportFormat::Table;

  try {
    auto result = colladapt::run(scenario, out_dir, options);
    std::cout << (options.report == colladapt::ReportFormat::Machine ? colladapt::format_machine(result)
                                                                     : colladapt::format_table(result));
    for (const auto& phase : result.phases) {
      for (const auto& t : phase.trace) std::clog << t.to_log_line() << "\n";
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}
