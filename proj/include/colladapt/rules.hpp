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

// Forward-chaining production rules over the mission fact base. Rules are
// conjunctive, negation-free, and may mint fresh entities for their heads, so
// the fixpoint is monotone and independent of rule order.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "colladapt/graphs.hpp"
#include "colladapt/model.hpp"

namespace colladapt::rules {

// Arguments starting with '?' are variables; anything else is an entity
// constant such as "node:fireman1" or "device:10.193.255.143".
struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

inline bool is_variable(std::string_view term) { return term.starts_with('?'); }

struct Rule {
  std::string id;
  std::vector<Atom> body;
  std::vector<std::string> creates;  // fresh-entity variables, head-only
  std::vector<Atom> head;
};

// Variable -> entity. Ordered so that sets of bindings sort by bound ids.
using Binding = std::map<std::string, std::string>;

// Arity of a vocabulary predicate, or -1 if the name is unknown.
int arity(std::string_view predicate);

class FactBase {
 public:
  static FactBase from_model(const ApplicationModel& model);

  // True if the fact was not already present.
  bool add(const Atom& fact);
  bool contains(const Atom& fact) const;
  const std::set<std::vector<std::string>>& facts(const std::string& predicate) const;
  std::size_t size() const;

  // First object o with predicate(subject, o), or empty.
  std::string object_of(const std::string& predicate, const std::string& subject) const;

  friend bool operator==(const FactBase&, const FactBase&) = default;

 private:
  std::map<std::string, std::set<std::vector<std::string>>> facts_;
};

enum class RuleErrc { MalformedRule, NonTermination };

class RuleError : public std::runtime_error {
 public:
  RuleError(RuleErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  RuleErrc code() const noexcept { return code_; }

 private:
  RuleErrc code_;
};

// Throws MalformedRule on unknown predicates, arity mismatches, or head
// variables that are neither bound by the body nor created.
void check_rule(const Rule& rule);

std::set<Binding> match(const Rule& rule, const FactBase& facts);
std::set<Binding> match(const Rule& rule, const ApplicationModel& model);

// Asserts the head under `binding`. Each created variable becomes a flow
// entity whose id is derived from its session and endpoint ips, so firing the
// same (rule, binding) twice adds nothing the second time.
FactBase fire(const Rule& rule, const Binding& binding, const FactBase& facts);

// Sender per (node, session, data type) that sources a flow; receiver per
// incoming flow.
CollaborationGraph synthesize(const FactBase& facts);

struct InferenceOptions {
  std::size_t firing_budget = 10'000;
};

struct Inference {
  FactBase facts;
  CollaborationGraph graph;
  std::size_t firings = 0;  // productive firings only
};

Inference run_inference(const ApplicationModel& model, const std::vector<Rule>& rules,
                        InferenceOptions options = {});
CollaborationGraph infer_collaboration(const ApplicationModel& model, const std::vector<Rule>& rules,
                                       InferenceOptions options = {});

// Session name bases used by the built-in rules.
inline constexpr std::string_view kFiremanSession = "Firecoor_inv_session";
inline constexpr std::string_view kRobotSession = "Robotcoor_inv_session";
inline constexpr std::string_view kSupervisorSession = "sup_coor_session";

// R1 fireman coordinator <-> investigator, R2 robot coordinator <->
// investigator, R3 supervisor <-> coordinator.
const std::vector<Rule>& builtin_rules();

}  // namespace colladapt::rules
