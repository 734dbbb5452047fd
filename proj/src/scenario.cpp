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

#include "colladapt/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "colladapt/oracle.hpp"

namespace colladapt {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& why) {
  throw ScenarioError(ScenarioErrc::Parse, where, "scenario parse error at " + where + ": " + why);
}

[[noreturn]] void validation_fail(const std::string& code, const std::string& why) {
  throw ScenarioError(ScenarioErrc::Validation, code, "scenario validation error [" + code + "]: " + why);
}

void only_fields(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      parse_fail(where + "." + key, "unknown field");
    }
  }
}

const json& field(const json& obj, const std::string& where, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where + "." + key, "missing field");
  return *it;
}

std::string get_string(const json& obj, const std::string& where, const std::string& key) {
  const auto& v = field(obj, where, key);
  if (!v.is_string()) parse_fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

int get_int(const json& obj, const std::string& where, const std::string& key) {
  const auto& v = field(obj, where, key);
  if (!v.is_number_integer()) parse_fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

Role parse_role(const json& obj, const std::string& where) {
  auto kind = parse_role_kind(get_string(obj, where, "role"));
  if (!kind) parse_fail(where + ".role", "unknown role");
  Role role{*kind, std::nullopt};
  if (obj.contains("investigator_kind")) {
    auto ik = parse_investigator_kind(get_string(obj, where, "investigator_kind"));
    if (!ik) parse_fail(where + ".investigator_kind", "expected Fireman or Robot");
    role.investigator_kind = ik;
  }
  return role;
}

struct ActorRecord {
  Actor actor;
  Device device;
};

ActorRecord parse_actor(const json& obj, const std::string& where) {
  only_fields(obj, where, {"id", "role", "investigator_kind", "ip", "energy", "ssid", "group"});
  ActorRecord r;
  r.actor.id = get_string(obj, where, "id");
  r.actor.role = parse_role(obj, where);
  r.device.ip = get_string(obj, where, "ip");
  r.device.energy = get_int(obj, where, "energy");
  r.device.ssid = get_string(obj, where, "ssid");
  r.actor.device = r.device.ip;
  r.actor.group = get_string(obj, where, "group");
  if ((r.actor.role.kind == RoleKind::Investigator) != r.actor.role.investigator_kind.has_value()) {
    validation_fail("role-kind", where + ": investigator_kind must be given exactly for investigators");
  }
  if (r.device.energy < 0 || r.device.energy > 100) {
    validation_fail("energy-range", where + ": energy " + std::to_string(r.device.energy));
  }
  return r;
}

MissionEvent parse_event(const json& obj, const std::string& where) {
  MissionEvent ev;
  auto kind = get_string(obj, where, "kind");
  if (kind == "EnergyChanged") {
    only_fields(obj, where, {"phase", "kind", "ip", "energy"});
    EnergyChanged e{get_string(obj, where, "ip"), get_int(obj, where, "energy")};
    if (e.energy < 0 || e.energy > 100) validation_fail("energy-range", where + ": energy " + std::to_string(e.energy));
    ev.payload = e;
  } else if (kind == "ActorArrived") {
    only_fields(obj, where, {"phase", "kind", "actor", "links"});
    auto rec = parse_actor(field(obj, where, "actor"), where + ".actor");
    ActorArrived e{rec.actor, rec.device, rec.actor.group, {}};
    if (obj.contains("links")) {
      const auto& links = obj.at("links");
      if (!links.is_array()) parse_fail(where + ".links", "expected an array of ips");
      for (const auto& l : links) {
        if (!l.is_string()) parse_fail(where + ".links", "expected an array of ips");
        e.links.push_back(l.get<std::string>());
      }
    }
    ev.payload = e;
  } else if (kind == "ActorDeparted") {
    only_fields(obj, where, {"phase", "kind", "actor"});
    ev.payload = ActorDeparted{get_string(obj, where, "actor")};
  } else if (kind == "RoleChanged") {
    only_fields(obj, where, {"phase", "kind", "actor", "role", "investigator_kind"});
    RoleChanged e{get_string(obj, where, "actor"), parse_role(obj, where)};
    if ((e.role.kind == RoleKind::Investigator) != e.role.investigator_kind.has_value()) {
      validation_fail("role-kind", where + ": investigator_kind must be given exactly for investigators");
    }
    ev.payload = e;
  } else if (kind == "LinkChanged") {
    only_fields(obj, where, {"phase", "kind", "a", "b", "up"});
    const auto& up = field(obj, where, "up");
    if (!up.is_boolean()) parse_fail(where + ".up", "expected a boolean");
    ev.payload = LinkChanged{get_string(obj, where, "a"), get_string(obj, where, "b"), up.get<bool>()};
  } else {
    parse_fail(where + ".kind", "unknown event kind " + kind);
  }
  ev.label = get_string(obj, where, "phase");
  return ev;
}

std::string file_stem(const std::string& label) {
  std::string out = label;
  for (auto& c : out) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

PhaseReport snapshot(const std::string& label, const EngineState& state, const MiddlewareGraph& phase_start,
                     Level level, std::vector<TraceEntry> trace) {
  PhaseReport p;
  p.label = label;
  for (const auto& [name, s] : state.collab.sessions()) p.sessions.push_back(name);
  p.cm_hosts = state.deployed.cm_hosts();
  p.plan = diff(phase_start, state.deployed);
  p.level = level;
  p.degraded = state.degraded;
  p.energies = state.context.energy;
  p.trace = std::move(trace);
  return p;
}

void write_snapshots(const std::filesystem::path& dir, const std::string& label, const EngineState& state,
                     OutputFormat format) {
  auto stem = file_stem(label);
  if (format != OutputFormat::Dot) {
    write_file(dir / ("collab-" + stem + ".graphml"), to_graphml(state.collab));
    write_file(dir / ("mw-" + stem + ".graphml"), to_graphml(state.deployed));
  }
  if (format != OutputFormat::GraphML) {
    write_file(dir / ("collab-" + stem + ".dot"), to_dot(state.collab));
    write_file(dir / ("mw-" + stem + ".dot"), to_dot(state.deployed));
  }
}

// Consecutive runs of events sharing a phase label.
std::vector<std::pair<std::string, std::vector<const MissionEvent*>>> phases_of(const Scenario& s) {
  std::vector<std::pair<std::string, std::vector<const MissionEvent*>>> out;
  for (const auto& ev : s.events) {
    if (out.empty() || out.back().first != ev.label) out.push_back({ev.label, {}});
    out.back().second.push_back(&ev);
  }
  return out;
}

std::string join_hosts(const std::map<std::string, std::string>& hosts) {
  std::string out;
  for (const auto& [session, ip] : hosts) {
    if (!out.empty()) out += ", ";
    out += session + "@" + ip;
  }
  return out.empty() ? "-" : out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail("byte " + std::to_string(e.byte), e.what());
  }
  only_fields(doc, "$", {"schema_version", "initial_phase", "config", "actors", "links", "events"});
  if (get_int(doc, "$", "schema_version") != kScenarioSchemaVersion) {
    parse_fail("$.schema_version", "unsupported version");
  }

  Scenario s;
  if (doc.contains("initial_phase")) s.initial_phase = get_string(doc, "$", "initial_phase");

  if (doc.contains("config")) {
    const auto& cfg = doc.at("config");
    only_fields(cfg, "$.config", {"e_min", "policy"});
    if (cfg.contains("e_min")) s.config.e_min = get_int(cfg, "$.config", "e_min");
    if (cfg.contains("policy")) {
      auto p = parse_policy_kind(get_string(cfg, "$.config", "policy"));
      if (!p) parse_fail("$.config.policy", "expected dispersion or distance");
      s.config.policy = p;
    }
  }

  const auto& actors = field(doc, "$", "actors");
  if (!actors.is_array()) parse_fail("$.actors", "expected an array");
  for (std::size_t i = 0; i < actors.size(); ++i) {
    auto where = "$.actors[" + std::to_string(i) + "]";
    auto rec = parse_actor(actors[i], where);
    if (s.model.actors.contains(rec.actor.id)) validation_fail("duplicate-id", "actor " + rec.actor.id);
    if (s.model.devices.contains(rec.device.ip)) validation_fail("duplicate-id", "device " + rec.device.ip);
    s.model.devices.emplace(rec.device.ip, rec.device);
    s.model.actors.emplace(rec.actor.id, rec.actor);
    auto& g = s.model.groups[rec.actor.group];
    g.id = rec.actor.group;
    g.members.insert(rec.actor.id);
  }

  if (doc.contains("links")) {
    const auto& links = doc.at("links");
    if (!links.is_array()) parse_fail("$.links", "expected an array");
    for (std::size_t i = 0; i < links.size(); ++i) {
      const auto& l = links[i];
      if (!l.is_array() || l.size() != 2 || !l[0].is_string() || !l[1].is_string()) {
        parse_fail("$.links[" + std::to_string(i) + "]", "expected a pair of ips");
      }
      auto a = l[0].get<std::string>();
      auto b = l[1].get<std::string>();
      s.model.links.emplace(a, b);
      s.model.links.emplace(b, a);
    }
  }

  if (auto v = validate(s.model); !v.empty()) validation_fail(v.front().code, v.front().detail);

  if (doc.contains("events")) {
    const auto& events = doc.at("events");
    if (!events.is_array()) parse_fail("$.events", "expected an array");
    for (std::size_t i = 0; i < events.size(); ++i) {
      s.events.push_back(parse_event(events[i], "$.events[" + std::to_string(i) + "]"));
    }
  }

  std::set<std::string> seen{s.initial_phase};
  std::string current;
  for (const auto& ev : s.events) {
    if (ev.label == current) continue;
    if (!seen.insert(ev.label).second) {
      validation_fail("phase-order", "phase " + ev.label + " is not contiguous or reuses a label");
    }
    current = ev.label;
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

EngineConfig engine_config(const Scenario& scenario, const RunOptions& options) {
  EngineConfig cfg;
  if (scenario.config.e_min) cfg.e_min = *scenario.config.e_min;
  if (scenario.config.policy) cfg.policy = *scenario.config.policy;
  if (options.e_min) cfg.e_min = *options.e_min;
  if (options.policy) cfg.policy = *options.policy;
  return cfg;
}

RunReport run(const Scenario& scenario, const std::filesystem::path& out_dir, const RunOptions& options) {
  std::filesystem::create_directories(out_dir);
  RunReport report;

  auto init = initialize(scenario.model, engine_config(scenario, options), scenario.initial_phase);
  EngineState state = std::move(init.state);
  report.phases.push_back(snapshot(scenario.initial_phase, state, {}, init.trace.level, {init.trace}));
  write_snapshots(out_dir, scenario.initial_phase, state, options.format);

  for (const auto& [label, events] : phases_of(scenario)) {
    const MiddlewareGraph start = state.deployed;
    std::vector<TraceEntry> trace;
    Level level = Level::Middleware;
    for (const auto* ev : events) {
      auto r = step(state, *ev);
      state = std::move(r.state);
      if (r.trace.level == Level::Collaboration) level = Level::Collaboration;
      trace.push_back(std::move(r.trace));
    }
    if (state.degraded) level = Level::Degraded;
    report.phases.push_back(snapshot(label, state, start, level, std::move(trace)));
    write_snapshots(out_dir, label, state, options.format);
  }

  report.exit_code = std::any_of(report.phases.begin(), report.phases.end(),
                                 [](const PhaseReport& p) { return p.degraded; })
                         ? 2
                         : 0;
  write_file(out_dir / "report.txt", format_table(report));
  write_file(out_dir / "report.jsonl", format_machine(report));
  return report;
}

std::string format_table(const RunReport& report) {
  const std::vector<std::string> header{"phase", "level", "sessions", "plan", "cm hosts", "energies"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : report.phases) {
    std::string energies;
    for (const auto& [ip, e] : p.energies) {
      if (!energies.empty()) energies += " ";
      energies += ip + "=" + std::to_string(e);
    }
    rows.push_back({p.label, std::string(to_string(p.level)), std::to_string(p.sessions.size()), p.plan.summary(),
                    join_hosts(p.cm_hosts), energies});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << cells[c];
      if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size() + 2, ' ');
    }
    os << "\n";
  };
  emit(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  emit(rule);
  for (const auto& r : rows) emit(r);
  for (const auto& p : report.phases) {
    for (const auto& m : p.plan.moved) {
      os << p.label << ": move " << m.id() << " " << m.from() << " -> " << m.to() << "\n";
    }
  }
  return os.str();
}

std::string format_machine(const RunReport& report) {
  std::ostringstream os;
  for (const auto& p : report.phases) {
    json rec;
    rec["phase"] = p.label;
    rec["level"] = std::string(to_string(p.level));
    rec["degraded"] = p.degraded;
    rec["sessions"] = p.sessions;
    rec["cm_hosts"] = p.cm_hosts;
    rec["energies"] = p.energies;
    json plan = {{"added", json::array()}, {"removed", json::array()}, {"moved", json::array()}};
    for (const auto& v : p.plan.added) plan["added"].push_back(v.id);
    for (const auto& v : p.plan.removed) plan["removed"].push_back(v.id);
    for (const auto& m : p.plan.moved) plan["moved"].push_back({{"id", m.id()}, {"from", m.from()}, {"to", m.to()}});
    rec["plan"] = plan;
    json trace = json::array();
    for (const auto& t : p.trace) trace.push_back(t.to_log_line());
    rec["trace"] = trace;
    os << rec.dump() << "\n";
  }
  return os.str();
}

std::vector<OracleCheck> check_against_oracle(const Scenario& scenario, const RunOptions& options) {
  std::vector<OracleCheck> out;
  auto compare = [&](const std::string& label, const EngineState& s, const Policy& policy) {
    OracleCheck c{label, true, {}};
    if (s.candidates.empty()) {
      c.agrees = s.deployed.empty() || s.degraded;
      c.detail = "no candidates";
    } else {
      auto pick = oracle::brute_force_select(s.candidates, s.context, policy, s.config.e_min);
      if (!pick) {
        c.agrees = s.degraded;
        c.detail = "oracle: infeasible";
      } else {
        c.agrees = !s.degraded && s.candidates.candidates[*pick] == s.deployed;
        c.detail = "oracle: candidate " + std::to_string(*pick) + ", cm " +
                   join_hosts(s.candidates.candidates[*pick].cm_hosts());
      }
    }
    out.push_back(std::move(c));
  };

  auto init = initialize(scenario.model, engine_config(scenario, options), scenario.initial_phase);
  EngineState state = std::move(init.state);
  compare(scenario.initial_phase, state, Policy::dispersion());
  for (const auto& ev : scenario.events) {
    Policy policy = state.config.policy == PolicyKind::Distance ? Policy::distance(state.deployed)
                                                                : Policy::dispersion();
    auto r = step(state, ev);
    state = std::move(r.state);
    compare(ev.label + "/" + std::string(kind_name(ev.payload)), state, policy);
  }
  return out;
}

}  // namespace colladapt
