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

// Phased explore/exploit agents for sparse linear bandits and the simulated
// environment they interact with.
//
// Every cycle c plays the d exploration actions once, refreshes the OLS
// estimate, and then exploits for m_c steps:
//
//   APSEE            lock the top-H support of theta_hat once the sorted gap
//                    exceeds 2 eps_c; m_c = c after locking, 0 before.
//   APSEE_G          same, with the greedy support and the minimum greedy
//                    gap compared against 2 L_X eps_c.
//   APSEE_G_COMPACT  no locking; greedy support every cycle, m_c = floor(sqrt(c)).

#ifndef SPARSE_BANDIT_ALGORITHMS_H_
#define SPARSE_BANDIT_ALGORITHMS_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sparse_bandit/estimation.h"
#include "sparse_bandit/geometry.h"
#include "sparse_bandit/rng.h"

namespace sparse_bandit {

// Linear reward theta*^T x plus Gaussian(0, sigma^2) noise.
class Environment {
 public:
  Environment(VectorXd theta_star, double sigma, std::uint64_t seed);

  double pull(const VectorXd& x);
  double expected_reward(const VectorXd& x) const { return theta_star_.dot(x); }
  const VectorXd& theta_star() const { return theta_star_; }
  double sigma() const { return sigma_; }

 private:
  VectorXd theta_star_;
  double sigma_;
  Rng rng_;
};

enum class AlgorithmMode { kApsee, kApseeG, kApseeGCompact };
enum class Phase { kExplore, kExploit };

std::string_view to_string(AlgorithmMode mode);
AlgorithmMode parse_algorithm_mode(std::string_view name);
std::string_view to_string(Phase phase);

struct AgentConfig {
  AlgorithmMode mode = AlgorithmMode::kApsee;
  int h = 1;
  double delta = 0.1;
};

struct PlannedAction {
  VectorXd action;
  SupportSet support;
  Phase phase = Phase::kExplore;
  int cycle = 1;
  int basis_index = -1;  // -1 while exploiting
};

// Snapshot taken at the end of each exploration block.
struct CycleRecord {
  int cycle = 0;
  double eps = 0.0;
  // Sorted gap (APSEE) or minimum greedy gap (APSEE_G, COMPACT) of theta_hat.
  double gap = 0.0;
  bool locked = false;      // support locked at or before this cycle
  bool lock_event = false;  // locked during this cycle
  VectorXd theta_hat;
  // Support the agent would commit to now: the locked support once locked,
  // else the top-H / greedy support of theta_hat.
  SupportSet estimate;
  int exploit_length = 0;
  VectorXd exploit_action;  // empty when exploit_length == 0
};

class Agent {
 public:
  Agent(const ActionSet& geometry, ExplorationBasis basis, AgentConfig config);

  // Next action to play. Repeated calls without observe() return the same
  // action.
  PlannedAction select_action() const;
  // Consumes the reward of the pending action and advances the schedule.
  void observe(double reward);

  AlgorithmMode mode() const { return config_.mode; }
  int cycle() const { return cycle_; }
  Phase phase() const { return phase_; }
  bool support_found() const { return support_found_; }
  const SupportSet& estimated_support() const { return estimated_support_; }
  const OlsState& ols() const { return ols_; }
  const ExplorationBasis& basis() const { return basis_; }
  const std::vector<CycleRecord>& cycles() const { return cycles_; }
  // Cycle at which the support locked, 0 if it has not.
  int lock_cycle() const { return lock_cycle_; }

 private:
  void finish_exploration();
  void start_next_cycle();

  ActionSet geometry_;
  ExplorationBasis basis_;
  AgentConfig config_;

  int cycle_ = 1;
  int step_ = 0;  // position inside the current phase
  Phase phase_ = Phase::kExplore;
  mutable bool pending_ = false;
  VectorXd cycle_rewards_;
  OlsState ols_;
  bool support_found_ = false;
  SupportSet estimated_support_;
  int lock_cycle_ = 0;
  int exploit_length_ = 0;
  SupportSet exploit_support_;
  VectorXd exploit_action_;
  std::vector<CycleRecord> cycles_;
};

struct StepRecord {
  int cycle = 0;
  Phase phase = Phase::kExplore;
  int basis_index = -1;
  double reward = 0.0;
  double expected_reward = 0.0;
};

struct RunTrace {
  std::vector<StepRecord> steps;
  std::vector<CycleRecord> cycles;
  int lock_cycle = 0;

  // Action played at step t (1-based), rebuilt from the basis and the
  // per-cycle exploit actions.
  VectorXd action_at(std::int64_t t, const ExplorationBasis& basis) const;
  SupportSet support_at(std::int64_t t, const ExplorationBasis& basis) const;
  // Index into `cycles` of the record for cycle c, if the block finished.
  std::optional<std::size_t> cycle_index(int c) const;
};

// Plays exactly T rounds; the last cycle may be cut short.
RunTrace run_horizon(Environment& env, Agent& agent, std::int64_t horizon);

}  // namespace sparse_bandit

#endif  // SPARSE_BANDIT_ALGORITHMS_H_
