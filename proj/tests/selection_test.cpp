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

#include <gtest/gtest.h>

#include "colladapt/oracle.hpp"
#include "colladapt/rules.hpp"
#include "fixtures.hpp"

namespace colladapt {
namespace {

using namespace colladapt::testing;

CandidateSet candidates_for(const ApplicationModel& m) {
  return refine(rules::infer_collaboration(m, rules::builtin_rules()), m);
}

const MiddlewareGraph& with_hosts(const CandidateSet& set, const std::string& fire, const std::string& sup) {
  for (const auto& c : set.candidates) {
    auto h = c.cm_hosts();
    if (h.at(kFireSession) == fire && h.at(kSupSession) == sup) return c;
  }
  throw std::logic_error("no such candidate");
}

TEST(SelectionTest, ScoreIsLowestCmHostEnergy) {
  auto set = candidates_for(phase1_model());
  auto ctx = ContextSnapshot::from_model(phase1_model());
  EXPECT_EQ(context_adaptation(with_hosts(set, kFireman1Ip, kFiremanCoordIp), ctx).value, 90);
  EXPECT_EQ(context_adaptation(with_hosts(set, kFireman2Ip, kRobotCoordIp), ctx).value, 79);
}

TEST(SelectionTest, LowEnergyCmHostIsInfeasible) {
  auto set = candidates_for(phase2_model());
  auto ctx = ContextSnapshot::from_model(phase2_model());
  EXPECT_FALSE(context_adaptation(with_hosts(set, kFireman1Ip, kFiremanCoordIp), ctx).feasible());
  EXPECT_EQ(context_adaptation(with_hosts(set, kFireman1Ip, kFiremanCoordIp), ctx).value, -1);
}

TEST(SelectionTest, CoHostedCmsAreInfeasible) {
  auto set = candidates_for(phase1_model());
  auto ctx = ContextSnapshot::from_model(phase1_model());
  EXPECT_EQ(context_adaptation(with_hosts(set, kFiremanCoordIp, kFiremanCoordIp), ctx).value, -1);
}

TEST(SelectionTest, NoCmsScoresFull) { EXPECT_EQ(context_adaptation({}, {}).value, 100); }

TEST(SelectionTest, MissingContext) {
  auto set = candidates_for(phase1_model());
  auto ctx = ContextSnapshot::from_model(phase1_model());
  ctx.energy.erase(kFireman2Ip);
  try {
    context_adaptation(set.candidates.front(), ctx);
    FAIL();
  } catch (const SelectError& e) {
    EXPECT_EQ(e.code(), SelectErrc::MissingContext);
  }
}

TEST(SelectionTest, EminIsConfigurable) {
  auto set = candidates_for(phase1_model());
  auto ctx = ContextSnapshot::from_model(phase1_model());
  const auto& c = with_hosts(set, kFireman1Ip, kFiremanCoordIp);
  EXPECT_EQ(context_adaptation(c, ctx, {91}).value, -1);
  EXPECT_EQ(context_adaptation(c, ctx, {90}).value, 90);
}

TEST(SelectionTest, Dispersion) {
  auto set = candidates_for(phase1_model());
  auto g = select(set, ContextSnapshot::from_model(phase1_model()), Policy::dispersion());
  EXPECT_EQ(dispersion(g), 5);
  MiddlewareGraph one;
  one.add({"cm:s", MwKind::CM, DataType::Audio, "s", "10.0.0.1"});
  one.add({"ep:s:1", MwKind::EP, DataType::Audio, "s", "10.0.0.1"});
  EXPECT_EQ(dispersion(one), 1);
  EXPECT_EQ(dispersion({}), 0);
}

TEST(SelectionTest, RelativeCost) {
  auto set = candidates_for(phase1_model());
  const auto& a = with_hosts(set, kFireman1Ip, kFiremanCoordIp);
  EXPECT_EQ(relative_cost(a, a), 0);
  EXPECT_EQ(relative_cost(a, with_hosts(set, kFireman2Ip, kFiremanCoordIp)), 1);
  EXPECT_EQ(relative_cost(a, with_hosts(set, kFireman2Ip, kSupervisorIp)), 2);
}

TEST(SelectionTest, Phase1Placement) {
  auto g = select(candidates_for(phase1_model()), ContextSnapshot::from_model(phase1_model()), Policy::dispersion());
  EXPECT_EQ(g.cm_hosts(), (std::map<std::string, std::string>{{kFireSession, kFireman1Ip},
                                                              {kSupSession, kFiremanCoordIp}}));
}

TEST(SelectionTest, Phase2PlacementUnderDistance) {
  auto current =
      select(candidates_for(phase1_model()), ContextSnapshot::from_model(phase1_model()), Policy::dispersion());
  auto g = select(candidates_for(phase2_model()), ContextSnapshot::from_model(phase2_model()),
                  Policy::distance(current));
  EXPECT_EQ(g.cm_hosts().at(kFireSession), kFireman2Ip);
  EXPECT_EQ(g.cm_hosts().at(kSupSession), kFiremanCoordIp);
}

TEST(SelectionTest, Singleton) {
  auto set = candidates_for(phase1_model());
  CandidateSet one{{set.candidates[4]}, set.source};
  EXPECT_EQ(select(one, ContextSnapshot::from_model(phase1_model()), Policy::dispersion()), set.candidates[4]);
}

TEST(SelectionTest, Errors) {
  auto set = candidates_for(phase1_model());
  auto ctx = ContextSnapshot::from_model(phase1_model());
  auto code = [&](const CandidateSet& s, const ContextSnapshot& c, const Policy& p) {
    try {
      select(s, c, p);
    } catch (const SelectError& e) {
      return e.code();
    }
    throw std::logic_error("no error");
  };
  EXPECT_EQ(code(set, ctx, {PolicyKind::Distance, std::nullopt}), SelectErrc::MissingCurrent);
  EXPECT_EQ(code({}, ctx, Policy::dispersion()), SelectErrc::EmptyCandidateSet);
  auto dark = ctx;
  for (auto& [ip, e] : dark.energy) e = 10;
  EXPECT_EQ(code(set, dark, Policy::dispersion()), SelectErrc::NoFeasibleCandidate);
}

TEST(SelectionProperty, MatchesBruteForce) {
  Rng rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    auto inst = random_selection_instance(rng);
    const auto& all = inst.candidates.candidates;
    Policy policy = uniform(rng, 0, 1) ? Policy::dispersion()
                                       : Policy::distance(all[uniform(rng, 0, static_cast<int>(all.size()) - 1)]);
    auto expected = oracle::brute_force_select(inst.candidates, inst.context, policy, inst.e_min);
    if (!expected) {
      EXPECT_THROW(select(inst.candidates, inst.context, policy, {inst.e_min}), SelectError);
      continue;
    }
    auto got = select_index(inst.candidates, inst.context, policy, {inst.e_min});
    EXPECT_EQ(got.index, *expected) << "trial " << trial;
    for (const auto& c : all) EXPECT_LE(context_adaptation(c, inst.context, {inst.e_min}), got.score);
  }
}

// Raising every energy by a constant (staying within range and above E_min)
// keeps the argmax.
TEST(SelectionProperty, ShiftInvariance) {
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto inst = random_selection_instance(rng);
    bool all_high = true;
    int top = 0;
    for (const auto& [ip, e] : inst.context.energy) {
      all_high = all_high && e >= inst.e_min;
      top = std::max(top, e);
    }
    if (!all_high || top == 100) continue;
    // Co-hosted CMs stay infeasible whatever the energies.
    if (!oracle::brute_force_select(inst.candidates, inst.context, Policy::dispersion(), inst.e_min)) continue;
    auto shifted = inst.context;
    int delta = uniform(rng, 1, 100 - top);
    for (auto& [ip, e] : shifted.energy) e += delta;
    auto policy = Policy::dispersion();
    EXPECT_EQ(select_index(inst.candidates, inst.context, policy, {inst.e_min}).index,
              select_index(inst.candidates, shifted, policy, {inst.e_min}).index);
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

}  // namespace
}  // namespace colladapt
