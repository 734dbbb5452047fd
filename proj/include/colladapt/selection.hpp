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

// Deployment selection: discard candidates the resource context cannot carry,
// keep the best-scored ones, break ties by policy, then by candidate order.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "colladapt/graphs.hpp"
#include "colladapt/model.hpp"
#include "colladapt/refinement.hpp"

namespace colladapt {

struct ContextSnapshot {
  std::map<std::string, int> energy;  // ip -> percent
  // Reserved attribute slots; nothing scores them yet.
  std::map<std::string, int> bandwidth;
  std::map<std::string, int> memory;

  static ContextSnapshot from_model(const ApplicationModel& model);

  friend bool operator==(const ContextSnapshot&, const ContextSnapshot&) = default;
};

struct Score {
  static constexpr int kInfeasible = -1;
  int value = kInfeasible;

  bool feasible() const { return value >= 0; }
  friend auto operator<=>(const Score&, const Score&) = default;
};

enum class PolicyKind { Dispersion, Distance };

std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> parse_policy_kind(std::string_view text);

struct Policy {
  PolicyKind kind = PolicyKind::Dispersion;
  std::optional<MiddlewareGraph> current;  // required for Distance

  static Policy dispersion() { return {PolicyKind::Dispersion, std::nullopt}; }
  static Policy distance(MiddlewareGraph current) { return {PolicyKind::Distance, std::move(current)}; }
};

struct SelectionConfig {
  int e_min = 60;
};

enum class SelectErrc { NoFeasibleCandidate, MissingCurrent, MissingContext, EmptyCandidateSet };

class SelectError : public std::runtime_error {
 public:
  SelectError(SelectErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  SelectErrc code() const noexcept { return code_; }

 private:
  SelectErrc code_;
};

// -1 if a CM host is below e_min or a device hosts two CMs; otherwise the
// lowest CM-host energy (100 when there are no CMs).
Score context_adaptation(const MiddlewareGraph& candidate, const ContextSnapshot& context,
                         SelectionConfig config = {});

// Number of distinct devices hosting at least one component.
int dispersion(const MiddlewareGraph& candidate);

// Size of the migration plan from `current` to `candidate`.
int relative_cost(const MiddlewareGraph& current, const MiddlewareGraph& candidate);

struct Selection {
  std::size_t index = 0;  // into the candidate set
  Score score;
};

Selection select_index(const CandidateSet& candidates, const ContextSnapshot& context, const Policy& policy,
                       SelectionConfig config = {});
MiddlewareGraph select(const CandidateSet& candidates, const ContextSnapshot& context, const Policy& policy,
                       SelectionConfig config = {});

}  // namespace colladapt
