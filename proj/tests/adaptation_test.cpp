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

#include <gtest/gtest.h>

#include "colladapt/oracle.hpp"
#include "fixtures.hpp"

namespace colladapt {
namespace {

using namespace colladapt::testing;

EngineState phase1_state() { return initialize(phase1_model(), {}, "phase1").state; }

MissionEvent energy(const std::string& ip, int value, std::string label = "e") {
  return {EnergyChanged{ip, value}, std::move(label)};
}

TEST(AdaptationTest, InitialDeployment) {
  auto r = initialize(phase1_model(), {}, "phase1");
  EXPECT_EQ(r.trace.level, Level::Initial);
  EXPECT_FALSE(r.state.degraded);
  EXPECT_EQ(r.state.deployed.cm_hosts().at(kSupSession), kFiremanCoordIp);
  EXPECT_EQ(r.state.deployed.cm_hosts().at(kFireSession), kFireman1Ip);
  EXPECT_EQ(r.plan.added.size(), 16u);
}

TEST(AdaptationTest, EnergyDropMovesChannelManager) {
  auto r = step(phase1_state(), energy(kFireman1Ip, 50, "phase2"));
  EXPECT_EQ(r.trace.level, Level::Middleware);
  EXPECT_FALSE(r.trace.rules_refired);
  EXPECT_TRUE(r.plan.added.empty());
  EXPECT_TRUE(r.plan.removed.empty());
  ASSERT_EQ(r.plan.moved.size(), 1u);
  EXPECT_EQ(r.plan.moved[0].id(), cm_id(kFireSession));
  EXPECT_EQ(r.plan.moved[0].to(), kFireman2Ip);
  EXPECT_EQ(r.state.deployed.cm_hosts().at(kSupSession), kFiremanCoordIp);
}

TEST(AdaptationTest, ArrivalOpensRobotSession) {
  auto s2 = step(phase1_state(), energy(kFireman1Ip, 50, "phase2")).state;
  auto r = step(s2, robot_arrival());
  EXPECT_EQ(r.trace.level, Level::Collaboration);
  EXPECT_TRUE(r.trace.rules_refired);
  EXPECT_EQ(r.state.collab.sessions().size(), 3u);
  EXPECT_TRUE(r.plan.moved.empty());
  EXPECT_TRUE(r.plan.removed.empty());
  EXPECT_EQ(r.plan.added.size(), 5u);
  // The robot (95) outranks the robot coordinator (79) as CM host.
  EXPECT_EQ(r.state.deployed.cm_hosts().at(kRobotSession), kRobot3Ip);
}

// Fireman 2 hosts no CM; at 80 it still outranks nothing that matters, which
// the brute-force scan confirms before the plan is checked.
TEST(AdaptationTest, IrrelevantEnergyChangeGivesEmptyPlan) {
  auto s1 = phase1_state();
  auto next_model = set_energy(s1.model, kFireman2Ip, 80);
  auto pick = oracle::brute_force_select(s1.candidates, ContextSnapshot::from_model(next_model),
                                         Policy::distance(s1.deployed), 60);
  ASSERT_TRUE(pick);
  ASSERT_EQ(s1.candidates.candidates[*pick], s1.deployed);

  auto r = step(s1, energy(kFireman2Ip, 80));
  EXPECT_TRUE(r.plan.empty());
  EXPECT_EQ(r.trace.level, Level::Middleware);
}

TEST(AdaptationTest, RedeliveredEnergyIsIdempotent) {
  auto r1 = step(phase1_state(), energy(kFireman1Ip, 50));
  auto r2 = step(r1.state, energy(kFireman1Ip, 50));
  EXPECT_TRUE(r2.plan.empty());
  EXPECT_EQ(r2.state.deployed, r1.state.deployed);
}

TEST(AdaptationTest, AllHostsDrainedDegrades) {
  auto s = phase1_state();
  StepResult r;
  for (const auto& ip : {kSupervisorIp, kFiremanCoordIp, kRobotCoordIp, kFireman1Ip, kFireman2Ip}) {
    r = step(s, energy(ip, 10));
    s = r.state;
  }
  EXPECT_EQ(r.trace.level, Level::Degraded);
  EXPECT_TRUE(s.degraded);
  EXPECT_TRUE(r.plan.empty());
  EXPECT_FALSE(r.trace.cause.empty());
  // The last feasible deployment is kept.
  EXPECT_FALSE(s.deployed.empty());

  // Recovery picks up again at the middleware level.
  auto back = step(s, energy(kFiremanCoordIp, 90));
  back = step(back.state, energy(kFireman2Ip, 88));
  EXPECT_FALSE(back.state.degraded);
  EXPECT_EQ(back.trace.level, Level::Middleware);
}

TEST(AdaptationTest, DepartureAndLinkEventsRefireRules) {
  auto s = phase1_state();
  auto r = step(s, {ActorDeparted{"fireman1"}, "leave"});
  EXPECT_EQ(r.trace.level, Level::Collaboration);
  EXPECT_EQ(r.state.collab.flows.size(), 6u);
  EXPECT_FALSE(r.plan.removed.empty());

  auto cut = step(r.state, {LinkChanged{kFireman2Ip, kFiremanCoordIp, false}, "cut"});
  EXPECT_EQ(cut.state.collab.sessions().size(), 1u);
  EXPECT_EQ(cut.state.deployed.cm_hosts().size(), 1u);

  auto promoted = step(cut.state, {RoleChanged{"fireman2", Role::robot_coordinator()}, "promote"});
  EXPECT_EQ(promoted.trace.level, Level::Collaboration);
  EXPECT_EQ(promoted.state.collab.sessions().at(kSupSession).flows.size(), 6u);
}

TEST(AdaptationTest, EverybodyLeaves) {
  auto s = phase1_state();
  for (const auto* id : {"supervisor", "fireman_coordinator", "robot_coordinator", "fireman1", "fireman2"}) {
    s = step(s, {ActorDeparted{id}, "leave"}).state;
  }
  EXPECT_TRUE(s.deployed.empty());
  EXPECT_TRUE(s.collab.empty());
  EXPECT_FALSE(s.degraded);
  auto r = step(s, {ActorArrived{{"x", Role::supervisor(), {}, {}}, {"10.0.0.1", 70, "n"}, "g", {}}, "join"});
  EXPECT_TRUE(r.state.deployed.empty());
}

TEST(AdaptationTest, BadEventIsAnInputError) {
  EXPECT_THROW(step(phase1_state(), energy("10.0.0.9", 40)), ModelError);
}

TEST(AdaptationTest, ApplyPlan) {
  auto s1 = phase1_state();
  auto r = step(s1, energy(kFireman1Ip, 50));
  EXPECT_EQ(apply(MigrationPlan{}, s1.deployed), s1.deployed);
  EXPECT_EQ(apply(r.plan, s1.deployed), r.state.deployed);

  MigrationPlan bogus;
  bogus.removed.push_back({"ep:nowhere", MwKind::EP, DataType::Audio, "s", "10.0.0.1"});
  EXPECT_THROW(apply(bogus, s1.deployed), PlanMismatch);
  MigrationPlan stale = r.plan;
  EXPECT_THROW(apply(stale, r.state.deployed), PlanMismatch);
}

TEST(AdaptationTest, TraceLine) {
  auto r = step(phase1_state(), energy(kFireman1Ip, 50, "phase2"));
  EXPECT_EQ(r.trace.to_log_line(),
            "event=phase2 kind=EnergyChanged level=middleware rules=kept plan=\"+0 -0 ~1\" "
            "cm=Firecoor_inv_session@10.193.255.146,sup_coor_session@10.193.255.100");
}

// Random energy walks: every non-degraded step deploys a max-score candidate,
// and no max-score candidate would have needed a smaller plan.
TEST(AdaptationProperty, StepsStayOptimalAndMinimal) {
  Rng rng(8);
  auto s = phase3_model();
  auto state = initialize(s).state;
  std::vector<std::string> ips;
  for (const auto& [ip, d] : state.model.devices) ips.push_back(ip);
  for (int i = 0; i < 300; ++i) {
    auto before = state.deployed;
    auto r = step(state, energy(ips[uniform(rng, 0, static_cast<int>(ips.size()) - 1)], uniform(rng, 40, 100)));
    state = r.state;
    if (state.degraded) continue;
    auto score = context_adaptation(state.deployed, state.context);
    ASSERT_TRUE(score.feasible());
    for (const auto& c : state.candidates.candidates) {
      auto other = context_adaptation(c, state.context);
      ASSERT_LE(other, score);
      if (other == score) ASSERT_GE(relative_cost(before, c), static_cast<int>(r.plan.size()));
    }
  }
}

}  // namespace
}  // namespace colladapt
