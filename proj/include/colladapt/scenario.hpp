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

#pragma once

// Scenario files and the phase-by-phase replay driver behind the CLI.
//
// A scenario is a JSON document:
//
//   {
//     "schema_version": 1,
//     "initial_phase": "phase1",                       (optional, "initial")
//     "config": {"e_min": 60, "policy": "distance"},   (optional)
//     "actors": [{"id": "...", "role": "Investigator", "investigator_kind": "Fireman",
//                 "ip": "...", "energy": 93, "ssid": "...", "group": "team1"}],
//     "links": [["ip-a", "ip-b"]],
//     "events": [{"phase": "phase2", "kind": "EnergyChanged", "ip": "...", "energy": 50}]
//   }
//
// Event kinds and their fields:
//   EnergyChanged  ip, energy
//   ActorArrived   actor (same shape as an actors[] entry), links (peer ips)
//   ActorDeparted  actor (id)
//   RoleChanged    actor (id), role, investigator_kind
//   LinkChanged    a, b, up
//
// Unknown fields are rejected.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "colladapt/adaptation.hpp"

namespace colladapt {

inline constexpr int kScenarioSchemaVersion = 1;

struct ScenarioConfig {
  std::optional<int> e_min;
  std::optional<PolicyKind> policy;
};

struct Scenario {
  ApplicationModel model;
  std::vector<MissionEvent> events;
  ScenarioConfig config;
  std::string initial_phase = "initial";
};

enum class ScenarioErrc { Parse, Validation };

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(ScenarioErrc code, std::string detail, const std::string& what)
      : std::runtime_error(what), code_(code), detail_(std::move(detail)) {}
  ScenarioErrc code() const noexcept { return code_; }
  // Byte position for parse errors, violation code for validation errors.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ScenarioErrc code_;
  std::string detail_;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

enum class OutputFormat { GraphML, Dot, Both };
enum class ReportFormat { Table, Machine };

struct RunOptions {
  std::optional<PolicyKind> policy;  // overrides the scenario config
  std::optional<int> e_min;
  OutputFormat format = OutputFormat::GraphML;
  ReportFormat report = ReportFormat::Table;
};

struct PhaseReport {
  std::string label;
  std::vector<std::string> sessions;
  std::map<std::string, std::string> cm_hosts;  // session -> ip
  MigrationPlan plan;                           // phase start -> phase end
  Level level = Level::Initial;
  bool degraded = false;
  std::map<std::string, int> energies;
  std::vector<TraceEntry> trace;
};

struct RunReport {
  std::vector<PhaseReport> phases;
  int exit_code = 0;  // 0 ok, 2 if any phase ended degraded
};

EngineConfig engine_config(const Scenario& scenario, const RunOptions& options);

// Replays the scenario phase by phase. Writes collab-<phase>.graphml and
// mw-<phase>.graphml (plus .dot when asked) and report.txt / report.jsonl
// into `out_dir`.
RunReport run(const Scenario& scenario, const std::filesystem::path& out_dir, const RunOptions& options = {});

std::string format_table(const RunReport& report);
std::string format_machine(const RunReport& report);  // one JSON record per line

struct OracleCheck {
  std::string label;
  bool agrees = true;
  std::string detail;
};

// Replays the scenario and, at every step, compares the engine's choice with
// the brute-force selection over the same candidate set.
std::vector<OracleCheck> check_against_oracle(const Scenario& scenario, const RunOptions& options = {});

}  // namespace colladapt
