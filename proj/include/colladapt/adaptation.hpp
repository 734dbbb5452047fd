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

// Event-driven reconfiguration. Each mission event is applied to the model and
// then resolved at the lowest level that can absorb it:
//
//   middleware     re-select among the existing candidate deployments
//   collaboration  re-run refinement (and the rules, if the event changed
//                  actors, roles, or links) and select again
//   degraded       nothing feasible; the last deployment is kept as-is
//
// Adaptation steps select with the distance policy by default so that the
// emitted migration plan is as small as possible.

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "colladapt/graphs.hpp"
#include "colladapt/model.hpp"
#include "colladapt/refinement.hpp"
#include "colladapt/rules.hpp"
#include "colladapt/selection.hpp"

namespace colladapt {

struct EnergyChanged {
  std::string ip;
  int energy = 0;
};

struct ActorArrived {
  Actor actor;
  Device device;
  std::string group;
  std::vector<std::string> links;  // peer ips in radio range
};

struct ActorDeparted {
  std::string actor_id;
};

struct RoleChanged {
  std::string actor_id;
  Role role;
};

struct LinkChanged {
  std::string a;
  std::string b;
  bool up = true;
};

using EventPayload = std::variant<EnergyChanged, ActorArrived, ActorDeparted, RoleChanged, LinkChanged>;

struct MissionEvent {
  EventPayload payload;
  std::string label;  // phase tag

  // Anything other than an energy reading changes the fact base the rules
  // read from.
  bool is_structural() const { return !std::holds_alternative<EnergyChanged>(payload); }
};

std::string_view kind_name(const EventPayload& payload);

enum class Level { Initial, Middleware, Collaboration, Degraded };

std::string_view to_string(Level level);

struct EngineConfig {
  int e_min = 60;
  PolicyKind policy = PolicyKind::Distance;
  std::size_t candidate_limit = 10'000;
  std::size_t firing_budget = 10'000;
  std::vector<rules::Rule> rules = rules::builtin_rules();
};

struct EngineState {
  ApplicationModel model;
  CollaborationGraph collab;
  CandidateSet candidates;
  MiddlewareGraph deployed;
  ContextSnapshot context;
  EngineConfig config;
  bool degraded = false;
  std::string degraded_cause;
};

struct TraceEntry {
  std::string label;
  std::string event;  // event kind
  Level level = Level::Initial;
  bool rules_refired = false;
  std::string plan;  // MigrationPlan::summary()
  std::map<std::string, std::string> cm_hosts;
  std::string cause;  // set when degraded

  // event=<label> kind=<kind> level=<level> rules=<refired|kept> plan=<+a -r ~m> cm=<session@ip,...>
  std::string to_log_line() const;
};

struct StepResult {
  EngineState state;
  MigrationPlan plan;
  TraceEntry trace;
};

// Initial deployment: rules, refinement, then dispersion selection (there is
// no current mapping to measure distance against yet).
StepResult initialize(const ApplicationModel& model, EngineConfig config = {}, std::string label = "initial");

// Throws ModelError when the event does not fit the model (unknown ip, actor,
// energy out of range). Infeasibility is not an error: it yields Degraded.
StepResult step(const EngineState& state, const MissionEvent& event);

// Expects the event to be applied to state.model and state.context already.
// Updates collab, candidates, and deployed in place.
Level escalate(EngineState& state, const MissionEvent& event);

ApplicationModel apply_event(const ApplicationModel& model, const MissionEvent& event);

class PlanMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MiddlewareGraph apply(const MigrationPlan& plan, const MiddlewareGraph& graph);

}  // namespace colladapt
