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

#include "colladapt/refinement.hpp"

#include <map>
#include <set>

namespace colladapt {

namespace {

// Most frequent flow type in the session; ties go to the earlier enumerator.
DataType dominant_type(const Session& session, const CollaborationGraph& collab) {
  std::map<DataType, int> counts;
  for (const auto& id : session.flows) ++counts[collab.flows.at(id).data_type];
  DataType best = DataType::Audio;
  int best_count = -1;
  for (const auto& [type, n] : counts) {
    if (n > best_count) {
      best = type;
      best_count = n;
    }
  }
  return best;
}

}  // namespace

MwVertex rewrite(const CollabVertex& component) {
  for (const auto& p : kProductions) {
    if (p.lhs != component.kind) continue;
    // snd:<rest> -> ep:<rest>, rcv:<rest> -> ec:<rest>
    auto colon = component.id.find(':');
    auto rest = colon == std::string::npos ? component.id : component.id.substr(colon + 1);
    auto prefix = p.rhs == MwKind::EP ? "ep:" : "ec:";
    return MwVertex{prefix + rest, p.rhs, component.data_type, component.session, component.ip};
  }
  return {};
}

std::vector<std::string> cm_host_choices(const Session& session, const CollaborationGraph& collab) {
  std::set<std::string> ips;
  for (const auto& [id, v] : collab.vertices) {
    if (v.session == session.name) ips.insert(v.ip);
  }
  return {ips.begin(), ips.end()};
}

CandidateSet refine(const CollaborationGraph& collab, const ApplicationModel& model, RefineOptions options) {
  for (const auto& [id, v] : collab.vertices) {
    if (!model.devices.contains(v.ip)) {
      throw RefineError(RefineErrc::UnresolvedDevice, "component " + id + " on unknown device " + v.ip);
    }
  }

  CandidateSet out;
  out.source = std::make_shared<const CollaborationGraph>(collab);
  auto sessions = collab.sessions();
  if (sessions.empty()) return out;

  MiddlewareGraph base;
  for (const auto& [id, v] : collab.vertices) base.add(rewrite(v));

  struct Slot {
    std::string session;
    DataType type;
    std::vector<std::string> hosts;
  };
  std::vector<Slot> slots;
  std::size_t total = 1;
  for (const auto& [name, s] : sessions) {
    auto hosts = cm_host_choices(s, collab);
    if (hosts.empty()) return out;
    total *= hosts.size();
    if (total > options.candidate_limit) {
      throw RefineError(RefineErrc::CandidateLimit,
                        "more than " + std::to_string(options.candidate_limit) + " candidate deployments");
    }
    slots.push_back({name, dominant_type(s, collab), std::move(hosts)});
  }

  // Odometer over the host choices, last session varying fastest.
  std::vector<std::size_t> digits(slots.size(), 0);
  out.candidates.reserve(total);
  for (std::size_t n = 0; n < total; ++n) {
    MiddlewareGraph g = base;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& s = slots[i];
      g.add({cm_id(s.session), MwKind::CM, s.type, s.session, s.hosts[digits[i]]});
    }
    out.candidates.push_back(std::move(g));
    for (std::size_t i = slots.size(); i-- > 0;) {
      if (++digits[i] < slots[i].hosts.size()) break;
      digits[i] = 0;
    }
  }
  return out;
}

}  // namespace colladapt
