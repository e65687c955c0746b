// Copyright 2026 The Authors.
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

#include "sparse_bandit/algorithms.h"

#include <gtest/gtest.h>

#include <cmath>

#include "sparse_bandit/oracles.h"
#include "test_util.h"

namespace sparse_bandit {
namespace {

using testing::random_vector;

VectorXd vec(std::initializer_list<double> values) {
  VectorXd v(values.size());
  int i = 0;
  for (const double x : values) v(i++) = x;
  return v;
}

Agent make_agent(const ActionSet& geometry, AlgorithmMode mode, int h, double sigma,
                 BasisKind kind = BasisKind::kStandard, std::uint64_t seed = 0) {
  return Agent(geometry, make_basis(kind, geometry, h, sigma, seed), {mode, h, 0.1});
}

TEST(EnvironmentTest, SameSeedSameRewards) {
  Environment a(vec({1.0, -1.0}), 0.3, 42);
  Environment b(vec({1.0, -1.0}), 0.3, 42);
  for (int t = 0; t < 100; ++t) EXPECT_EQ(a.pull(vec({0.5, 0.2})), b.pull(vec({0.5, 0.2})));
}

TEST(EnvironmentTest, ZeroNoiseIsExpectedReward) {
  Environment env(vec({1.0, -1.0}), 0.0, 1);
  EXPECT_EQ(env.pull(vec({0.5, 0.2})), env.expected_reward(vec({0.5, 0.2})));
  EXPECT_THROW(env.pull(vec({1.0})), std::invalid_argument);
  EXPECT_THROW(Environment(vec({1.0}), -0.1, 0), std::invalid_argument);
}

TEST(EnvironmentTest, NoiseMoments) {
  Environment env(VectorXd::Zero(1), 0.5, 3);
  double sum = 0.0;
  double sq = 0.0;
  constexpr int kN = 200000;
  for (int n = 0; n < kN; ++n) {
    const double y = env.pull(VectorXd::Zero(1));
    sum += y;
    sq += y * y;
  }
  EXPECT_NEAR(sum / kN, 0.0, 0.01);
  EXPECT_NEAR(sq / kN, 0.25, 0.01);
}

TEST(ModeNamesTest, RoundTrip) {
  for (const auto mode :
       {AlgorithmMode::kApsee, AlgorithmMode::kApseeG, AlgorithmMode::kApseeGCompact}) {
    EXPECT_EQ(parse_algorithm_mode(to_string(mode)), mode);
  }
  EXPECT_THROW(parse_algorithm_mode("ucb"), std::invalid_argument);
  EXPECT_EQ(to_string(Phase::kExplore), "explore");
  EXPECT_EQ(to_string(Phase::kExploit), "exploit");
}

TEST(AgentTest, FirstActionIsFirstBasisAction) {
  const ActionSet ball = ActionSet::euclidean_ball(4, 1.0);
  const Agent agent = make_agent(ball, AlgorithmMode::kApsee, 2, 0.5);
  const PlannedAction planned = agent.select_action();
  EXPECT_EQ(planned.cycle, 1);
  EXPECT_EQ(planned.phase, Phase::kExplore);
  EXPECT_EQ(planned.basis_index, 0);
  EXPECT_EQ(planned.action, agent.basis().action(0));
  EXPECT_EQ(agent.select_action().action, planned.action);
}

TEST(AgentTest, ObserveWithoutPendingThrows) {
  Agent agent = make_agent(ActionSet::euclidean_ball(3, 1.0), AlgorithmMode::kApsee, 1, 0.5);
  EXPECT_THROW(agent.observe(1.0), std::logic_error);
  agent.select_action();
  agent.observe(1.0);
  EXPECT_THROW(agent.observe(1.0), std::logic_error);
}

TEST(AgentTest, ConstructorValidates) {
  const ActionSet ball = ActionSet::euclidean_ball(3, 1.0);
  const ExplorationBasis basis = make_basis(BasisKind::kStandard, ball, 1, 0.5, 0);
  EXPECT_THROW(Agent(ball, basis, {AlgorithmMode::kApsee, 0, 0.1}), std::invalid_argument);
  EXPECT_THROW(Agent(ball, basis, {AlgorithmMode::kApsee, 4, 0.1}), std::invalid_argument);
  EXPECT_THROW(Agent(ball, basis, {AlgorithmMode::kApsee, 1, 1.0}), std::invalid_argument);
  EXPECT_THROW(Agent(ActionSet::euclidean_ball(4, 1.0), basis, {AlgorithmMode::kApsee, 1, 0.1}),
               std::invalid_argument);
}

TEST(AgentTest, ApseeBeforeLockOnlyExplores) {
  const ActionSet ball = ActionSet::euclidean_ball(10, 1.0);
  Environment env(VectorXd::Constant(10, 0.3), 1.0, 5);
  Agent agent = make_agent(ball, AlgorithmMode::kApsee, 3, 1.0);
  const RunTrace trace = run_horizon(env, agent, 3000);
  EXPECT_EQ(trace.lock_cycle, 0);
  for (const StepRecord& step : trace.steps) EXPECT_EQ(step.phase, Phase::kExplore);
  EXPECT_EQ(trace.cycles.size(), 300u);
}

TEST(AgentTest, CompactExploitsFloorSqrtCycle) {
  const ActionSet l1 = ActionSet::l1_ball(4, 1.0);
  Environment env(vec({0.4, -0.3, 0.2, 0.1}), 0.5, 6);
  Agent agent = make_agent(l1, AlgorithmMode::kApseeGCompact, 2, 0.5);
  const RunTrace trace = run_horizon(env, agent, 200);
  for (const CycleRecord& record : trace.cycles) {
    EXPECT_EQ(record.exploit_length, static_cast<int>(std::floor(std::sqrt(record.cycle))));
    EXPECT_FALSE(record.locked);
  }
  // Cycles 1 to 3 take 4 + 1 steps each, so cycle 4 spans t = 16..21.
  for (int t = 16; t <= 19; ++t) {
    EXPECT_EQ(trace.steps[t - 1].cycle, 4);
    EXPECT_EQ(trace.steps[t - 1].phase, Phase::kExplore);
  }
  EXPECT_EQ(trace.steps[19].phase, Phase::kExploit);
  EXPECT_EQ(trace.steps[20].phase, Phase::kExploit);
  EXPECT_EQ(trace.steps[21].cycle, 5);
  EXPECT_EQ(trace.lock_cycle, 0);
}

TEST(AgentTest, ZeroNoiseApseeLocksAtCycleOne) {
  const ActionSet ball = ActionSet::euclidean_ball(6, 1.0);
  const VectorXd theta = vec({0.1, -0.9, 0.5, 0.2, 0.7, -0.3});
  Environment env(theta, 0.0, 1);
  Agent agent = make_agent(ball, AlgorithmMode::kApsee, 3, 0.0);
  const RunTrace trace = run_horizon(env, agent, 30);
  EXPECT_EQ(trace.lock_cycle, 1);
  EXPECT_EQ(agent.estimated_support(), exact_top_h(ball, theta, 3).support);
  const VectorXd optimum = exact_top_h(ball, theta, 3).action;
  for (std::int64_t t = 1; t <= 30; ++t) {
    if (trace.steps[t - 1].phase == Phase::kExploit) {
      EXPECT_LT((trace.action_at(t, agent.basis()) - optimum).norm(), 1e-12);
    }
  }
}

TEST(AgentTest, ZeroNoiseGreedyLocksOnHypercube) {
  const ActionSet cube = ActionSet::hypercube(VectorXd::Zero(5), VectorXd::Ones(5));
  const VectorXd theta = vec({0.5, 0.1, 0.9, 0.3, 0.7});
  Environment env(theta, 0.0, 2);
  Agent agent = make_agent(cube, AlgorithmMode::kApseeG, 2, 0.0);
  run_horizon(env, agent, 10);
  EXPECT_EQ(agent.lock_cycle(), 1);
  EXPECT_EQ(agent.estimated_support(), greedy_select(cube, theta, 2).support);
  EXPECT_EQ(agent.estimated_support(), brute_force(cube, theta, 2).support);
}

TEST(AgentTest, FullSupportApseeLocksImmediately) {
  const ActionSet ball = ActionSet::euclidean_ball(3, 1.0);
  Environment env(vec({0.2, 0.1, -0.4}), 0.5, 3);
  Agent agent = make_agent(ball, AlgorithmMode::kApsee, 3, 0.5);
  run_horizon(env, agent, 3);
  EXPECT_EQ(agent.lock_cycle(), 1);
  EXPECT_EQ(agent.estimated_support(), SupportSet::full(3));
}

TEST(AgentTest, LockEventsReplayable) {
  Rng rng(30);
  int locks = 0;
  for (int n = 0; n < 20; ++n) {
    const ActionSet ball = ActionSet::euclidean_ball(8, 1.0);
    VectorXd theta = random_vector(8, rng);
    Environment env(theta, 0.05, rng.bits());
    Agent agent = make_agent(ball, AlgorithmMode::kApsee, 3, 0.05);
    const RunTrace trace = run_horizon(env, agent, 4000);
    for (const CycleRecord& record : trace.cycles) {
      const SortGap replay = empirical_sort_gap(record.theta_hat, 3);
      EXPECT_EQ(replay.gap, record.gap);
      EXPECT_EQ(record.eps, error_radius(agent.basis(), record.cycle, 8, 0.1));
      if (record.lock_event) {
        ++locks;
        EXPECT_GT(replay.gap, 2.0 * record.eps);
        EXPECT_EQ(replay.support, record.estimate);
      } else if (!record.locked) {
        EXPECT_LE(replay.gap, 2.0 * record.eps);
      }
    }
  }
  EXPECT_GT(locks, 0);
}

TEST(AgentTest, ExploitActionRefreshedEachCycle) {
  const ActionSet ball = ActionSet::euclidean_ball(4, 1.0);
  Environment env(vec({1.0, 0.05, 0.02, -0.9}), 0.1, 4);
  Agent agent = make_agent(ball, AlgorithmMode::kApsee, 2, 0.1);
  const RunTrace trace = run_horizon(env, agent, 2000);
  ASSERT_GT(trace.lock_cycle, 0);
  int refreshed = 0;
  for (std::size_t i = 1; i < trace.cycles.size(); ++i) {
    const CycleRecord& prev = trace.cycles[i - 1];
    const CycleRecord& cur = trace.cycles[i];
    if (!prev.locked) continue;
    EXPECT_EQ(cur.exploit_length, cur.cycle);
    EXPECT_EQ(cur.estimate, prev.estimate);
    EXPECT_LT((cur.exploit_action -
               ball.best_action_on_support(cur.estimate, cur.theta_hat)).norm(), 1e-15);
    refreshed += cur.exploit_action != prev.exploit_action ? 1 : 0;
  }
  EXPECT_GT(refreshed, 0);
}

TEST(RunHorizonTest, TruncationBeforeFirstCycleEnds) {
  const ActionSet ball = ActionSet::euclidean_ball(10, 1.0);
  Environment env(VectorXd::Ones(10) * 0.1, 0.5, 1);
  Agent agent = make_agent(ball, AlgorithmMode::kApsee, 2, 0.5);
  const RunTrace trace = run_horizon(env, agent, 7);
  EXPECT_EQ(trace.steps.size(), 7u);
  EXPECT_TRUE(trace.cycles.empty());
  EXPECT_EQ(trace.lock_cycle, 0);
  for (const StepRecord& step : trace.steps) EXPECT_EQ(step.phase, Phase::kExplore);
  EXPECT_THROW(run_horizon(env, agent, 0), std::invalid_argument);
}

TEST(RunHorizonTest, FixedSeedIsBitIdentical) {
  Rng rng(31);
  const ActionSet ell = ActionSet::ellipsoid(random_spd_matrix(6, 0.2, 1.0, rng));
  const VectorXd theta = random_vector(6, rng);
  auto run = [&] {
    Environment env(theta, 0.5, 99);
    Agent agent = make_agent(ell, AlgorithmMode::kApseeG, 2, 0.5, BasisKind::kGaussianOrthogonal,
                             7);
    return run_horizon(env, agent, 1500);
  };
  const RunTrace a = run();
  const RunTrace b = run();
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    EXPECT_EQ(a.steps[i].reward, b.steps[i].reward);
    EXPECT_EQ(a.steps[i].phase, b.steps[i].phase);
  }
  ASSERT_EQ(a.cycles.size(), b.cycles.size());
  for (std::size_t i = 0; i < a.cycles.size(); ++i) {
    EXPECT_EQ(a.cycles[i].theta_hat, b.cycles[i].theta_hat);
    EXPECT_EQ(a.cycles[i].gap, b.cycles[i].gap);
  }
}

TEST(AlgorithmPropertyTest, FeasibilityAndScheduleAcrossModes) {
  Rng rng(32);
  for (const ActionSet& g : testing::sample_geometries(6, rng)) {
    for (const auto mode :
         {AlgorithmMode::kApsee, AlgorithmMode::kApseeG, AlgorithmMode::kApseeGCompact}) {
      if (mode == AlgorithmMode::kApsee && g.kind() != GeometryKind::kEuclideanBall) continue;
      const VectorXd theta = random_vector(6, rng);
      Environment env(theta, 0.1, rng.bits());
      Agent agent = make_agent(g, mode, 2, 0.1, BasisKind::kUniformOrthogonal, rng.bits());
      const std::int64_t horizon = 1200;
      const RunTrace trace = run_horizon(env, agent, horizon);
      for (std::int64_t t = 1; t <= horizon; ++t) {
        const VectorXd x = trace.action_at(t, agent.basis());
        EXPECT_TRUE(g.contains(x)) << g.describe();
        EXPECT_LE((x.array() != 0.0).count(), 2);
        EXPECT_EQ(trace.steps[t - 1].expected_reward, theta.dot(x));
        if (mode != AlgorithmMode::kApseeGCompact && trace.steps[t - 1].phase == Phase::kExploit) {
          EXPECT_TRUE(trace.cycles[*trace.cycle_index(trace.steps[t - 1].cycle)].locked);
        }
      }
      // Finished cycles account for exactly d + exploit_length steps.
      std::int64_t t = 0;
      for (const CycleRecord& record : trace.cycles) {
        const std::int64_t block = 6 + record.exploit_length;
        if (t + block > horizon) break;
        for (std::int64_t s = t; s < t + block; ++s) EXPECT_EQ(trace.steps[s].cycle, record.cycle);
        t += block;
      }
    }
  }
}

TEST(AlgorithmPropertyTest, GreedyLockedSupportMatchesTruth) {
  Rng rng(33);
  int locks = 0;
  for (int n = 0; n < 30; ++n) {
    const ActionSet ell = ActionSet::ellipsoid(random_spd_matrix(5, 0.5, 1.0, rng));
    const VectorXd theta = random_vector(5, rng);
    Environment env(theta, 0.02, rng.bits());
    Agent agent = make_agent(ell, AlgorithmMode::kApseeG, 2, 0.02);
    run_horizon(env, agent, 3000);
    if (agent.lock_cycle() == 0) continue;
    ++locks;
    EXPECT_EQ(agent.estimated_support(), greedy_select(ell, theta, 2).support);
  }
  EXPECT_GT(locks, 10);
}

}  // namespace
}  // namespace sparse_bandit
