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

#include "colladapt/adaptation.hpp"

#include <sstream>

namespace colladapt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Policy policy_for(const EngineState& state) {
  if (state.config.policy == PolicyKind::Distance) return Policy::distance(state.deployed);
  return Policy::dispersion();
}

bool try_select(EngineState& state, const Policy& policy) {
  try {
    state.deployed = select(state.candidates, state.context, policy, {state.config.e_min});
    state.degraded = false;
    state.degraded_cause.clear();
    return true;
  } catch (const SelectError& e) {
    if (e.code() != SelectErrc::NoFeasibleCandidate) throw;
    state.degraded_cause = e.what();
    return false;
  }
}

TraceEntry make_trace(const EngineState& state, const std::string& label, std::string_view event, Level level,
                      bool refired, const MigrationPlan& plan) {
  TraceEntry t;
  t.label = label;
  t.event = std::string(event);
  t.level = level;
  t.rules_refired = refired;
  t.plan = plan.summary();
  t.cm_hosts = state.deployed.cm_hosts();
  if (level == Level::Degraded) t.cause = state.degraded_cause;
  return t;
}

}  // namespace

std::string_view kind_name(const EventPayload& payload) {
  return std::visit(overloaded{
                        [](const EnergyChanged&) { return std::string_view("EnergyChanged"); },
                        [](const ActorArrived&) { return std::string_view("ActorArrived"); },
                        [](const ActorDeparted&) { return std::string_view("ActorDeparted"); },
                        [](const RoleChanged&) { return std::string_view("RoleChanged"); },
                        [](const LinkChanged&) { return std::string_view("LinkChanged"); },
                    },
                    payload);
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Initial: return "initial";
    case Level::Middleware: return "middleware";
    case Level::Collaboration: return "collaboration";
    case Level::Degraded: return "degraded";
  }
  return "?";
}

std::string TraceEntry::to_log_line() const {
  std::ostringstream os;
  os << "event=" << label << " kind=" << event << " level=" << to_string(level)
     << " rules=" << (rules_refired ? "refired" : "kept") << " plan=\"" << plan << "\" cm=";
  bool first = true;
  for (const auto& [session, ip] : cm_hosts) {
    os << (first ? "" : ",") << session << "@" << ip;
    first = false;
  }
  if (!cause.empty()) os << " cause=\"" << cause << "\"";
  return os.str();
}

ApplicationModel apply_event(const ApplicationModel& model, const MissionEvent& event) {
  return std::visit(overloaded{
                        [&](const EnergyChanged& e) { return set_energy(model, e.ip, e.energy); },
                        [&](const ActorArrived& e) {
                          auto next = add_actor(model, e.actor, e.device, e.group);
                          for (const auto& peer : e.links) next = add_link(next, e.device.ip, peer);
                          return next;
                        },
                        [&](const ActorDeparted& e) { return remove_actor(model, e.actor_id); },
                        [&](const RoleChanged& e) { return set_role(model, e.actor_id, e.role); },
                        [&](const LinkChanged& e) {
                          return e.up ? add_link(model, e.a, e.b) : remove_link(model, e.a, e.b);
                        },
                    },
                    event.payload);
}

Level escalate(EngineState& state, const MissionEvent& event) {
  const Policy policy = policy_for(state);

  if (!event.is_structural()) {
    if (state.candidates.empty()) {
      state.degraded = false;
      return Level::Middleware;
    }
    if (try_select(state, policy)) return Level::Middleware;
  }

  if (event.is_structural()) {
    state.collab = rules::infer_collaboration(state.model, state.config.rules, {state.config.firing_budget});
  }
  state.candidates = refine(state.collab, state.model, {state.config.candidate_limit});
  if (state.candidates.empty()) {
    state.deployed = {};
    state.degraded = false;
    state.degraded_cause.clear();
    return Level::Collaboration;
  }
  if (try_select(state, policy)) return Level::Collaboration;
  state.degraded = true;
  return Level::Degraded;
}

StepResult initialize(const ApplicationModel& model, EngineConfig config, std::string label) {
  StepResult r;
  auto& s = r.state;
  s.model = model;
  s.config = std::move(config);
  s.context = ContextSnapshot::from_model(model);
  s.collab = rules::infer_collaboration(model, s.config.rules, {s.config.firing_budget});
  s.candidates = refine(s.collab, model, {s.config.candidate_limit});
  Level level = Level::Initial;
  if (!s.candidates.empty() && !try_select(s, Policy::dispersion())) {
    s.degraded = true;
    level = Level::Degraded;
  }
  r.plan = diff({}, s.deployed);
  r.trace = make_trace(s, label, "Initial", level, true, r.plan);
  return r;
}

StepResult step(const EngineState& state, const MissionEvent& event) {
  StepResult r;
  r.state = state;
  r.state.model = apply_event(state.model, event);
  r.state.context = ContextSnapshot::from_model(r.state.model);
  Level level = escalate(r.state, event);
  if (level != Level::Degraded) r.plan = diff(state.deployed, r.state.deployed);
  r.trace = make_trace(r.state, event.label, kind_name(event.payload), level, event.is_structural(), r.plan);
  return r;
}

MiddlewareGraph apply(const MigrationPlan& plan, const MiddlewareGraph& graph) {
  MiddlewareGraph out = graph;
  for (const auto& v : plan.removed) {
    auto it = out.vertices.find(v.id);
    if (it == out.vertices.end() || it->second != v) throw PlanMismatch("cannot remove absent component " + v.id);
    out.vertices.erase(it);
  }
  for (const auto& m : plan.moved) {
    auto it = out.vertices.find(m.id());
    if (it == out.vertices.end() || it->second != m.before) {
      throw PlanMismatch("cannot move absent component " + m.id());
    }
    it->second = m.after;
  }
  for (const auto& v : plan.added) {
    if (!out.vertices.emplace(v.id, v).second) throw PlanMismatch("component already present: " + v.id);
  }
  return out;
}

}  // namespace colladapt
