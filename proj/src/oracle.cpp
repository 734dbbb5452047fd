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

#include "colladapt/oracle.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace colladapt::oracle {

namespace {

int score(const MiddlewareGraph& g, const ContextSnapshot& context, int e_min) {
  std::vector<std::string> hosts;
  for (const auto& [id, v] : g.vertices) {
    if (v.kind == MwKind::CM) hosts.push_back(v.ip);
  }
  std::sort(hosts.begin(), hosts.end());
  if (std::adjacent_find(hosts.begin(), hosts.end()) != hosts.end()) return -1;
  int value = 100;
  for (const auto& ip : hosts) {
    int e = context.energy.at(ip);
    if (e < e_min) return -1;
    if (e < value) value = e;
  }
  return value;
}

int spread(const MiddlewareGraph& g) {
  std::vector<std::string> ips;
  for (const auto& [id, v] : g.vertices) ips.push_back(v.ip);
  std::sort(ips.begin(), ips.end());
  return static_cast<int>(std::unique(ips.begin(), ips.end()) - ips.begin());
}

int distance(const MiddlewareGraph& from, const MiddlewareGraph& to) {
  int n = 0;
  for (const auto& [id, v] : from.vertices) {
    auto it = to.vertices.find(id);
    if (it == to.vertices.end() || !(it->second == v)) ++n;
  }
  for (const auto& [id, v] : to.vertices) {
    if (!from.vertices.contains(id)) ++n;
  }
  return n;
}

}  // namespace

std::optional<std::size_t> brute_force_select(const CandidateSet& candidates, const ContextSnapshot& context,
                                              const Policy& policy, int e_min) {
  if (policy.kind == PolicyKind::Distance && !policy.current) {
    throw SelectError(SelectErrc::MissingCurrent, "distance policy needs the current deployment");
  }
  const auto& all = candidates.candidates;
  std::vector<int> scores;
  for (const auto& g : all) scores.push_back(score(g, context, e_min));

  // S1: candidates scoring at least as well as every other one.
  std::vector<std::size_t> s1;
  for (std::size_t k = 0; k < all.size(); ++k) {
    bool dominates = true;
    for (std::size_t x = 0; x < all.size(); ++x) dominates = dominates && scores[k] >= scores[x];
    if (dominates && scores[k] >= 0) s1.push_back(k);
  }
  if (s1.empty()) return std::nullopt;
  if (s1.size() == 1) return s1.front();

  std::vector<std::size_t> s2;
  for (auto k : s1) {
    bool keep = true;
    for (auto x : s1) {
      if (policy.kind == PolicyKind::Dispersion) {
        keep = keep && spread(all[k]) >= spread(all[x]);
      } else {
        keep = keep && distance(*policy.current, all[k]) <= distance(*policy.current, all[x]);
      }
    }
    if (keep) s2.push_back(k);
  }
  // "Select any" made deterministic: lowest candidate index.
  return *std::min_element(s2.begin(), s2.end());
}

}  // namespace colladapt::oracle
