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

// Collaboration -> middleware refinement. Senders become event producers,
// receivers become event consumers on the same host, and every session gets
// one channel manager. The only free choice is where each CM runs, so the
// candidate set is the cross product of per-session CM host choices.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "colladapt/graphs.hpp"
#include "colladapt/model.hpp"

namespace colladapt {

struct Production {
  CollabKind lhs;
  MwKind rhs;
};

inline constexpr Production kProductions[] = {
    {CollabKind::Sender, MwKind::EP},
    {CollabKind::Receiver, MwKind::EC},
};

MwVertex rewrite(const CollabVertex& component);

struct CandidateSet {
  // Ordered lexicographically by the CM host ips, sessions taken by name.
  std::vector<MiddlewareGraph> candidates;
  std::shared_ptr<const CollaborationGraph> source;

  bool empty() const { return candidates.empty(); }
  std::size_t size() const { return candidates.size(); }
};

enum class RefineErrc { UnresolvedDevice, CandidateLimit };

class RefineError : public std::runtime_error {
 public:
  RefineError(RefineErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  RefineErrc code() const noexcept { return code_; }

 private:
  RefineErrc code_;
};

struct RefineOptions {
  std::size_t candidate_limit = 10'000;
};

// Sorted, deduplicated ips of every device hosting a component of `session`.
std::vector<std::string> cm_host_choices(const Session& session, const CollaborationGraph& collab);

CandidateSet refine(const CollaborationGraph& collab, const ApplicationModel& model, RefineOptions options = {});

}  // namespace colladapt
