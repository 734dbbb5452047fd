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

// Shared test fixtures: the five-actor team of the reference mission and
// seeded random generators for property tests.

#include <random>
#include <string>
#include <vector>

#include "colladapt/adaptation.hpp"
#include "colladapt/graphs.hpp"
#include "colladapt/model.hpp"
#include "colladapt/refinement.hpp"
#include "colladapt/selection.hpp"

namespace colladapt::testing {

inline constexpr const char* kSupervisorIp = "10.193.255.1";
inline constexpr const char* kFiremanCoordIp = "10.193.255.100";
inline constexpr const char* kRobotCoordIp = "10.193.255.200";
inline constexpr const char* kFireman1Ip = "10.193.255.143";
inline constexpr const char* kFireman2Ip = "10.193.255.146";
inline constexpr const char* kRobot3Ip = "10.193.255.202";

inline constexpr const char* kFireSession = "Firecoor_inv_session";
inline constexpr const char* kSupSession = "sup_coor_session";
inline constexpr const char* kRobotSession = "Robotcoor_inv_session";

// Device energies per phase 1 of the reference mission.
inline ApplicationModel phase1_model() {
  ApplicationModel m;
  m = add_actor(m, {"supervisor", Role::supervisor(), {}, {}}, {kSupervisorIp, 86, "command-net"}, "team1");
  m = add_actor(m, {"fireman_coordinator", Role::fireman_coordinator(), {}, {}}, {kFiremanCoordIp, 90, "fire-net"},
                "team1");
  m = add_actor(m, {"robot_coordinator", Role::robot_coordinator(), {}, {}}, {kRobotCoordIp, 79, "robot-net"},
                "team1");
  m = add_actor(m, {"fireman1", Role::investigator(InvestigatorKind::Fireman), {}, {}},
                {kFireman1Ip, 93, "fire-net"}, "team1");
  m = add_actor(m, {"fireman2", Role::investigator(InvestigatorKind::Fireman), {}, {}},
                {kFireman2Ip, 88, "fire-net"}, "team1");
  m = add_link(m, kFireman1Ip, kFiremanCoordIp);
  m = add_link(m, kFireman2Ip, kFiremanCoordIp);
  return m;
}

inline ApplicationModel phase2_model() { return set_energy(phase1_model(), kFireman1Ip, 50); }

inline MissionEvent robot_arrival(std::string label = "phase3") {
  return {ActorArrived{{"robot3", Role::investigator(InvestigatorKind::Robot), {}, {}},
                       {kRobot3Ip, 95, "robot-net"},
                       "team1",
                       {kRobotCoordIp}},
          std::move(label)};
}

inline ApplicationModel phase3_model() { return apply_event(phase2_model(), robot_arrival()); }

// ---------------------------------------------------------------------------
// Random generators

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::string random_ip(int i) { return "10.0.0." + std::to_string(i + 1); }

// Up to `max_actors` actors with random roles, groups, SSIDs, and links.
inline ApplicationModel random_model(Rng& rng, int max_actors = 10) {
  ApplicationModel m;
  int n = uniform(rng, 0, max_actors);
  int groups = uniform(rng, 1, 3);
  int ssids = uniform(rng, 1, 3);
  for (int i = 0; i < n; ++i) {
    Role role;
    switch (uniform(rng, 0, 5)) {
      case 0: role = Role::supervisor(); break;
      case 1: role = Role::fireman_coordinator(); break;
      case 2: role = Role::robot_coordinator(); break;
      case 3: role = Role::investigator(InvestigatorKind::Robot); break;
      default: role = Role::investigator(InvestigatorKind::Fireman); break;
    }
    m = add_actor(m, {"a" + std::to_string(i), role, {}, {}},
                  {random_ip(i), uniform(rng, 0, 100), "ssid" + std::to_string(uniform(rng, 1, ssids))},
                  "g" + std::to_string(uniform(rng, 1, groups)));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (uniform(rng, 0, 2) == 0) m = add_link(m, random_ip(i), random_ip(j));
    }
  }
  return m;
}

// A collaboration graph shaped like the rule output: per session a hub and its
// peers exchanging audio in both directions.
inline CollaborationGraph random_collaboration(Rng& rng, int devices, int sessions) {
  CollaborationGraph g;
  for (int s = 0; s < sessions; ++s) {
    std::string name = "s" + std::to_string(s);
    std::vector<int> members;
    for (int d = 0; d < devices; ++d) members.push_back(d);
    std::shuffle(members.begin(), members.end(), rng);
    members.resize(uniform(rng, 2, std::min(devices, 4)));
    auto hub = random_ip(members[0]);
    auto add_flow = [&](const std::string& src, const std::string& dst) {
      CollabVertex snd{"snd:" + name + ":" + src + ":audio", CollabKind::Sender, src, DataType::Audio, name};
      CollabVertex rcv{"rcv:" + name + ":" + src + "->" + dst + ":audio", CollabKind::Receiver, dst,
                       DataType::Audio, name};
      g.vertices[snd.id] = snd;
      g.vertices[rcv.id] = rcv;
      Flow f{name + "/" + src + "->" + dst, DataType::Audio, snd.id, rcv.id, name};
      g.flows[f.id] = f;
    };
    for (std::size_t i = 1; i < members.size(); ++i) {
      add_flow(hub, random_ip(members[i]));
      add_flow(random_ip(members[i]), hub);
    }
  }
  return g;
}

struct SelectionInstance {
  ApplicationModel model;
  CollaborationGraph collab;
  CandidateSet candidates;
  ContextSnapshot context;
  int e_min = 60;
};

// <= 4 sessions over <= 8 devices. Energies come from a coarse grid so that
// score ties, and hence policy tie-breaks, are common.
inline SelectionInstance random_selection_instance(Rng& rng) {
  SelectionInstance inst;
  int devices = uniform(rng, 2, 8);
  static constexpr int kGrid[] = {30, 55, 60, 70, 70, 80, 80, 90, 100};
  for (int d = 0; d < devices; ++d) {
    int energy = kGrid[uniform(rng, 0, 8)];
    inst.model = add_actor(inst.model, {"a" + std::to_string(d), Role::supervisor(), {}, {}},
                           {random_ip(d), energy, "net"}, "g");
  }
  inst.collab = random_collaboration(rng, devices, uniform(rng, 1, 4));
  inst.candidates = refine(inst.collab, inst.model);
  inst.context = ContextSnapshot::from_model(inst.model);
  inst.e_min = uniform(rng, 0, 1) ? 60 : 75;
  return inst;
}

// Valid middleware graph over a small id/ip universe, so that random pairs
// share components and hosts often.
inline MiddlewareGraph random_middleware(Rng& rng) {
  MiddlewareGraph g;
  int sessions = uniform(rng, 0, 3);
  for (int s = 0; s < sessions; ++s) {
    if (uniform(rng, 0, 3) == 0) continue;
    std::string name = "s" + std::to_string(s);
    auto type = static_cast<DataType>(uniform(rng, 0, 2));
    g.add({cm_id(name), MwKind::CM, type, name, random_ip(uniform(rng, 0, 4))});
    for (int k = 0; k < 3; ++k) {
      if (uniform(rng, 0, 1)) {
        g.add({"ep:" + name + ":" + std::to_string(k), MwKind::EP, type, name, random_ip(uniform(rng, 0, 4))});
      }
      if (uniform(rng, 0, 1)) {
        g.add({"ec:" + name + ":" + std::to_string(k), MwKind::EC, type, name, random_ip(uniform(rng, 0, 4))});
      }
    }
  }
  return g;
}

}  // namespace colladapt::testing
