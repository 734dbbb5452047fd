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

#include "colladapt/selection.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <vector>

namespace colladapt {

ContextSnapshot ContextSnapshot::from_model(const ApplicationModel& model) {
  ContextSnapshot c;
  for (const auto& [ip, dev] : model.devices) c.energy[ip] = dev.energy;
  return c;
}

std::string_view to_string(PolicyKind kind) { return kind == PolicyKind::Dispersion ? "dispersion" : "distance"; }

std::optional<PolicyKind> parse_policy_kind(std::string_view text) {
  if (text == "dispersion") return PolicyKind::Dispersion;
  if (text == "distance") return PolicyKind::Distance;
  return std::nullopt;
}

Score context_adaptation(const MiddlewareGraph& candidate, const ContextSnapshot& context, SelectionConfig config) {
  for (const auto& [id, v] : candidate.vertices) {
    if (!context.energy.contains(v.ip)) {
      throw SelectError(SelectErrc::MissingContext, "no energy reading for " + v.ip);
    }
  }
  std::set<std::string> cm_hosts;
  int lowest = 100;
  for (const auto& [id, v] : candidate.vertices) {
    if (v.kind != MwKind::CM) continue;
    if (!cm_hosts.insert(v.ip).second) return {};
    int energy = context.energy.at(v.ip);
    if (energy < config.e_min) return {};
    lowest = std::min(lowest, energy);
  }
  return {lowest};
}

int dispersion(const MiddlewareGraph& candidate) {
  std::set<std::string> hosts;
  for (const auto& [id, v] : candidate.vertices) hosts.insert(v.ip);
  return static_cast<int>(hosts.size());
}

int relative_cost(const MiddlewareGraph& current, const MiddlewareGraph& candidate) {
  return static_cast<int>(diff(current, candidate).size());
}

Selection select_index(const CandidateSet& candidates, const ContextSnapshot& context, const Policy& policy,
                       SelectionConfig config) {
  if (candidates.empty()) throw SelectError(SelectErrc::EmptyCandidateSet, "no candidate deployments");
  if (policy.kind == PolicyKind::Distance && !policy.current) {
    throw SelectError(SelectErrc::MissingCurrent, "distance policy needs the current deployment");
  }

  std::vector<Score> scores;
  scores.reserve(candidates.size());
  for (const auto& c : candidates.candidates) scores.push_back(context_adaptation(c, context, config));
  Score best = *std::max_element(scores.begin(), scores.end());
  if (!best.feasible()) {
    throw SelectError(SelectErrc::NoFeasibleCandidate, "every candidate deployment is infeasible");
  }

  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == best) tied.push_back(i);
  }
  if (tied.size() == 1) return {tied.front(), best};

  // Policy tie-break; the first index among equals wins.
  std::size_t pick = tied.front();
  if (policy.kind == PolicyKind::Dispersion) {
    int top = -1;
    for (auto i : tied) {
      int d = dispersion(candidates.candidates[i]);
      if (d > top) {
        top = d;
        pick = i;
      }
    }
  } else {
    int low = std::numeric_limits<int>::max();
    for (auto i : tied) {
      int c = relative_cost(*policy.current, candidates.candidates[i]);
      if (c < low) {
        low = c;
        pick = i;
      }
    }
  }
  return {pick, best};
}

MiddlewareGraph select(const CandidateSet& candidates, const ContextSnapshot& context, const Policy& policy,
                       SelectionConfig config) {
  return candidates.candidates[select_index(candidates, context, policy, config).index];
}

}  // namespace colladapt
