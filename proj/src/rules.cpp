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

#include "colladapt/rules.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace colladapt::rules {

namespace {

constexpr std::array<std::pair<std::string_view, int>, 26> kVocabulary{{
    {"Investigator", 1},
    {"FiremanCoordinator", 1},
    {"RobotCoordinator", 1},
    {"Supervisor", 1},
    {"Coordinator", 1},
    {"Node", 1},
    {"Device", 1},
    {"hasRole", 2},
    {"hasHostingDevice", 2},
    {"hasSameSSID", 2},
    {"hasSignalWith", 2},
    {"belongsToSameGroup", 2},
    {"belongsToGroup", 2},
    {"differentFrom", 2},
    {"hasFiremanCordInvSession", 2},
    {"hasRobotCordInvSession", 2},
    {"hasSupCoordSession", 2},
    {"AudioFlow", 1},
    {"TextFlow", 1},
    {"VideoFlow", 1},
    {"hasSource", 2},
    {"hasDestination", 2},
    {"belongsToSession", 2},
    {"FiremanInvestigator", 1},
    {"RobotInvestigator", 1},
    {"Group", 1},
}};

constexpr std::array<std::pair<std::string_view, DataType>, 3> kFlowClasses{{
    {"AudioFlow", DataType::Audio},
    {"TextFlow", DataType::Text},
    {"VideoFlow", DataType::Video},
}};

bool is_builtin(std::string_view predicate) { return predicate == "differentFrom"; }

std::string node(const std::string& actor) { return "node:" + actor; }
std::string role(const std::string& actor) { return "role:" + actor; }
std::string device(const std::string& ip) { return "device:" + ip; }
std::string group(const std::string& id) { return "group:" + id; }
std::string session(std::string_view name) { return "session:" + std::string(name); }

std::string strip_prefix(const std::string& entity) {
  auto colon = entity.find(':');
  return colon == std::string::npos ? entity : entity.substr(colon + 1);
}

const std::set<std::vector<std::string>>& empty_set() {
  static const std::set<std::vector<std::string>> kEmpty;
  return kEmpty;
}

std::string substitute(const std::string& term, const Binding& b) {
  if (!is_variable(term)) return term;
  auto it = b.find(term);
  return it == b.end() ? term : it->second;
}

Atom substitute(const Atom& atom, const Binding& b) {
  Atom out{atom.predicate, {}};
  out.args.reserve(atom.args.size());
  for (const auto& a : atom.args) out.args.push_back(substitute(a, b));
  return out;
}

std::set<std::string> variables_of(const std::vector<Atom>& atoms) {
  std::set<std::string> out;
  for (const auto& a : atoms) {
    for (const auto& t : a.args) {
      if (is_variable(t)) out.insert(t);
    }
  }
  return out;
}

bool eval_builtin(const Atom& atom, const Binding& b) {
  // Only differentFrom exists today.
  return substitute(atom.args[0], b) != substitute(atom.args[1], b);
}

bool unify(const Atom& atom, const std::vector<std::string>& fact, Binding& b, std::vector<std::string>& bound) {
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    const auto& term = atom.args[i];
    if (!is_variable(term)) {
      if (term != fact[i]) return false;
      continue;
    }
    auto it = b.find(term);
    if (it != b.end()) {
      if (it->second != fact[i]) return false;
      continue;
    }
    b.emplace(term, fact[i]);
    bound.push_back(term);
  }
  return true;
}

void search(const std::vector<const Atom*>& atoms, std::size_t index, const std::vector<const Atom*>& builtins,
            const FactBase& facts, Binding& b, std::set<Binding>& out) {
  if (index == atoms.size()) {
    for (const auto* atom : builtins) {
      if (!eval_builtin(*atom, b)) return;
    }
    out.insert(b);
    return;
  }
  const Atom& atom = *atoms[index];
  for (const auto& fact : facts.facts(atom.predicate)) {
    std::vector<std::string> bound;
    if (unify(atom, fact, b, bound)) search(atoms, index + 1, builtins, facts, b, out);
    for (const auto& v : bound) b.erase(v);
  }
}

std::string fresh_entity(const Rule& rule, const std::string& var, const Binding& binding, const FactBase& facts) {
  std::string cls;
  std::string sess;
  std::string src;
  std::string dst;
  for (const auto& atom : rule.head) {
    if (atom.args.empty() || atom.args[0] != var) continue;
    if (atom.args.size() == 1) {
      cls = atom.predicate;
    } else if (atom.predicate == "belongsToSession") {
      sess = substitute(atom.args[1], binding);
    } else if (atom.predicate == "hasSource") {
      src = substitute(atom.args[1], binding);
    } else if (atom.predicate == "hasDestination") {
      dst = substitute(atom.args[1], binding);
    }
  }
  if (!sess.empty() && !src.empty() && !dst.empty()) {
    auto ip = [&](const std::string& n) {
      auto dev = facts.object_of("hasHostingDevice", n);
      return strip_prefix(dev.empty() ? n : dev);
    };
    std::string id = "flow:" + strip_prefix(sess) + "/" + ip(src) + "->" + ip(dst);
    if (cls == "TextFlow") id += "#text";
    if (cls == "VideoFlow") id += "#video";
    return id;
  }
  std::string id = "fresh:" + rule.id + "/" + var.substr(1);
  for (const auto& [k, v] : binding) id += "/" + v;
  return id;
}

std::vector<Atom> head_facts(const Rule& rule, const Binding& binding, const FactBase& facts) {
  Binding full = binding;
  for (const auto& var : rule.creates) full[var] = fresh_entity(rule, var, binding, facts);
  std::vector<Atom> out;
  out.reserve(rule.head.size());
  for (const auto& atom : rule.head) out.push_back(substitute(atom, full));
  return out;
}

bool fire_into(const Rule& rule, const Binding& binding, FactBase& facts) {
  bool added = false;
  for (const auto& atom : head_facts(rule, binding, facts)) added |= facts.add(atom);
  return added;
}

}  // namespace

int arity(std::string_view predicate) {
  for (const auto& [name, n] : kVocabulary) {
    if (name == predicate) return n;
  }
  return -1;
}

// ---------------------------------------------------------------------------

FactBase FactBase::from_model(const ApplicationModel& model) {
  FactBase fb;

  std::map<RoleKind, int> hubs;
  for (const auto& [id, actor] : model.actors) ++hubs[actor.role.kind];
  auto session_name = [&](std::string_view base, const Actor& hub) {
    std::string name(base);
    if (hubs[hub.role.kind] > 1) name += "@" + hub.id;
    return name;
  };

  for (const auto& [ip, dev] : model.devices) fb.add({"Device", {device(ip)}});
  for (const auto& [gid, g] : model.groups) fb.add({"Group", {group(gid)}});

  for (const auto& [id, actor] : model.actors) {
    const auto r = role(id);
    fb.add({"Node", {node(id)}});
    fb.add({"hasRole", {node(id), r}});
    fb.add({"hasHostingDevice", {node(id), device(actor.device)}});
    fb.add({"belongsToGroup", {r, group(actor.group)}});
    fb.add({std::string(to_string(actor.role.kind)), {r}});
    if (actor.role.is_coordinator()) fb.add({"Coordinator", {r}});
    switch (actor.role.kind) {
      case RoleKind::Investigator:
        fb.add({actor.role.investigator_kind == InvestigatorKind::Robot ? "RobotInvestigator"
                                                                        : "FiremanInvestigator",
                {r}});
        break;
      case RoleKind::FiremanCoordinator:
        fb.add({"hasFiremanCordInvSession", {r, session(session_name(kFiremanSession, actor))}});
        break;
      case RoleKind::RobotCoordinator:
        fb.add({"hasRobotCordInvSession", {r, session(session_name(kRobotSession, actor))}});
        break;
      case RoleKind::Supervisor:
        fb.add({"hasSupCoordSession", {r, session(session_name(kSupervisorSession, actor))}});
        break;
    }
  }

  for (const auto& [a, actor_a] : model.actors) {
    for (const auto& [b, actor_b] : model.actors) {
      if (actor_a.group == actor_b.group) fb.add({"belongsToSameGroup", {role(a), role(b)}});
    }
  }

  // hasSameSSID is derived from device attributes rather than stored.
  for (const auto& [a, dev_a] : model.devices) {
    for (const auto& [b, dev_b] : model.devices) {
      if (dev_a.ssid == dev_b.ssid) fb.add({"hasSameSSID", {device(a), device(b)}});
    }
  }
  for (const auto& [a, b] : model.links) fb.add({"hasSignalWith", {device(a), device(b)}});
  return fb;
}

bool FactBase::add(const Atom& fact) { return facts_[fact.predicate].insert(fact.args).second; }

bool FactBase::contains(const Atom& fact) const {
  auto it = facts_.find(fact.predicate);
  return it != facts_.end() && it->second.contains(fact.args);
}

const std::set<std::vector<std::string>>& FactBase::facts(const std::string& predicate) const {
  auto it = facts_.find(predicate);
  return it == facts_.end() ? empty_set() : it->second;
}

std::size_t FactBase::size() const {
  std::size_t n = 0;
  for (const auto& [p, s] : facts_) n += s.size();
  return n;
}

std::string FactBase::object_of(const std::string& predicate, const std::string& subject) const {
  const auto& set = facts(predicate);
  auto it = set.lower_bound({subject});
  if (it != set.end() && it->size() == 2 && (*it)[0] == subject) return (*it)[1];
  return {};
}

// ---------------------------------------------------------------------------

void check_rule(const Rule& rule) {
  auto fail = [&](const std::string& why) {
    throw RuleError(RuleErrc::MalformedRule, "rule " + rule.id + ": " + why);
  };
  for (const auto* part : {&rule.body, &rule.head}) {
    for (const auto& atom : *part) {
      int n = arity(atom.predicate);
      if (n < 0) fail("unknown predicate " + atom.predicate);
      if (static_cast<std::size_t>(n) != atom.args.size()) fail("arity mismatch for " + atom.predicate);
    }
  }
  for (const auto& atom : rule.head) {
    if (is_builtin(atom.predicate)) fail("builtin " + atom.predicate + " in head");
  }

  std::set<std::string> bound;
  for (const auto& atom : rule.body) {
    if (is_builtin(atom.predicate)) continue;
    for (const auto& t : atom.args) {
      if (is_variable(t)) bound.insert(t);
    }
  }
  for (const auto& v : variables_of(rule.body)) {
    if (!bound.contains(v)) fail("variable " + v + " only appears in builtins");
  }
  for (const auto& v : rule.creates) {
    if (!is_variable(v)) fail("created term " + v + " is not a variable");
    if (bound.contains(v)) fail("created variable " + v + " appears in body");
  }
  std::set<std::string> created(rule.creates.begin(), rule.creates.end());
  for (const auto& v : variables_of(rule.head)) {
    if (!bound.contains(v) && !created.contains(v)) fail("head variable " + v + " is unbound");
  }
}

std::set<Binding> match(const Rule& rule, const FactBase& facts) {
  check_rule(rule);
  std::vector<const Atom*> atoms;
  std::vector<const Atom*> builtins;
  for (const auto& atom : rule.body) (is_builtin(atom.predicate) ? builtins : atoms).push_back(&atom);
  std::set<Binding> out;
  Binding b;
  search(atoms, 0, builtins, facts, b, out);
  return out;
}

std::set<Binding> match(const Rule& rule, const ApplicationModel& model) {
  return match(rule, FactBase::from_model(model));
}

FactBase fire(const Rule& rule, const Binding& binding, const FactBase& facts) {
  check_rule(rule);
  for (const auto& v : variables_of(rule.body)) {
    if (!binding.contains(v)) {
      throw RuleError(RuleErrc::MalformedRule, "rule " + rule.id + ": binding misses " + v);
    }
  }
  FactBase next = facts;
  fire_into(rule, binding, next);
  return next;
}

CollaborationGraph synthesize(const FactBase& facts) {
  CollaborationGraph g;
  for (const auto& [cls, type] : kFlowClasses) {
    for (const auto& f : facts.facts(std::string(cls))) {
      const auto& flow_entity = f[0];
      auto src_node = facts.object_of("hasSource", flow_entity);
      auto dst_node = facts.object_of("hasDestination", flow_entity);
      auto sess = facts.object_of("belongsToSession", flow_entity);
      if (src_node.empty() || dst_node.empty() || sess.empty()) continue;
      auto src_ip = strip_prefix(facts.object_of("hasHostingDevice", src_node));
      auto dst_ip = strip_prefix(facts.object_of("hasHostingDevice", dst_node));
      auto name = strip_prefix(sess);
      auto type_name = std::string(to_string(type));

      CollabVertex sender{"snd:" + name + ":" + src_ip + ":" + type_name, CollabKind::Sender, src_ip, type, name};
      CollabVertex receiver{"rcv:" + name + ":" + src_ip + "->" + dst_ip + ":" + type_name, CollabKind::Receiver,
                            dst_ip, type, name};
      Flow flow{strip_prefix(flow_entity), type, sender.id, receiver.id, name};
      g.vertices.emplace(sender.id, sender);
      g.vertices.emplace(receiver.id, receiver);
      g.flows.emplace(flow.id, flow);
    }
  }
  return g;
}

Inference run_inference(const ApplicationModel& model, const std::vector<Rule>& rules, InferenceOptions options) {
  for (const auto& r : rules) check_rule(r);
  Inference result{FactBase::from_model(model), {}, 0};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : rules) {
      for (const auto& binding : match(rule, result.facts)) {
        auto head = head_facts(rule, binding, result.facts);
        if (std::all_of(head.begin(), head.end(), [&](const Atom& a) { return result.facts.contains(a); })) {
          continue;
        }
        if (result.firings == options.firing_budget) {
          throw RuleError(RuleErrc::NonTermination,
                          "no fixpoint within " + std::to_string(options.firing_budget) + " firings");
        }
        for (const auto& atom : head) result.facts.add(atom);
        ++result.firings;
        changed = true;
      }
    }
  }
  result.graph = synthesize(result.facts);
  return result;
}

CollaborationGraph infer_collaboration(const ApplicationModel& model, const std::vector<Rule>& rules,
                                       InferenceOptions options) {
  return run_inference(model, rules, options).graph;
}

// ---------------------------------------------------------------------------

namespace {

// Coordinator <-> investigator: same group, same SSID, and in radio range.
Rule coordinator_investigator_rule(std::string id, const std::string& coordinator_class,
                                   const std::string& session_predicate) {
  return Rule{
      std::move(id),
      {
          {"Investigator", {"?inv"}},
          {"Node", {"?ninv"}},
          {"Device", {"?dinv"}},
          {"hasRole", {"?ninv", "?inv"}},
          {"hasHostingDevice", {"?ninv", "?dinv"}},
          {coordinator_class, {"?coo"}},
          {"Node", {"?ncoo"}},
          {"hasRole", {"?ncoo", "?coo"}},
          {"Device", {"?dcoo"}},
          {"hasHostingDevice", {"?ncoo", "?dcoo"}},
          {"hasSameSSID", {"?dinv", "?dcoo"}},
          {"hasSignalWith", {"?dinv", "?dcoo"}},
          {"belongsToSameGroup", {"?inv", "?coo"}},
          {"differentFrom", {"?inv", "?coo"}},
          {"belongsToGroup", {"?coo", "?t"}},
          {session_predicate, {"?coo", "?s"}},
      },
      {"?af1", "?af2"},
      {
          {"AudioFlow", {"?af1"}},
          {"hasSource", {"?af1", "?ncoo"}},
          {"hasDestination", {"?af1", "?ninv"}},
          {"belongsToSession", {"?af1", "?s"}},
          {"AudioFlow", {"?af2"}},
          {"hasSource", {"?af2", "?ninv"}},
          {"hasDestination", {"?af2", "?ncoo"}},
          {"belongsToSession", {"?af2", "?s"}},
      },
  };
}

// Supervisor <-> coordinators over the interconnected routers: role and group
// facts only.
Rule supervisor_coordinator_rule() {
  return Rule{
      "R3-supervisor-coordinator",
      {
          {"Supervisor", {"?sup"}},
          {"Node", {"?nsup"}},
          {"hasRole", {"?nsup", "?sup"}},
          {"Coordinator", {"?coo"}},
          {"Node", {"?ncoo"}},
          {"hasRole", {"?ncoo", "?coo"}},
          {"belongsToSameGroup", {"?sup", "?coo"}},
          {"differentFrom", {"?sup", "?coo"}},
          {"hasSupCoordSession", {"?sup", "?s"}},
      },
      {"?af1", "?af2"},
      {
          {"AudioFlow", {"?af1"}},
          {"hasSource", {"?af1", "?nsup"}},
          {"hasDestination", {"?af1", "?ncoo"}},
          {"belongsToSession", {"?af1", "?s"}},
          {"AudioFlow", {"?af2"}},
          {"hasSource", {"?af2", "?ncoo"}},
          {"hasDestination", {"?af2", "?nsup"}},
          {"belongsToSession", {"?af2", "?s"}},
      },
  };
}

}  // namespace

const std::vector<Rule>& builtin_rules() {
  static const std::vector<Rule> kRules{
      coordinator_investigator_rule("R1-fireman-coordinator-investigator", "FiremanCoordinator",
                                    "hasFiremanCordInvSession"),
      coordinator_investigator_rule("R2-robot-coordinator-investigator", "RobotCoordinator",
                                    "hasRobotCordInvSession"),
      supervisor_coordinator_rule(),
  };
  return kRules;
}

}  // namespace colladapt::rules
