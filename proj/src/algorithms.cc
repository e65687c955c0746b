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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "sparse_bandit/oracles.h"

namespace sparse_bandit {
namespace {

int floor_sqrt(int c) {
  int m = static_cast<int>(std::sqrt(static_cast<double>(c)));
  while ((m + 1) * (m + 1) <= c) ++m;
  while (m * m > c) --m;
  return m;
}

}  // namespace

Environment::Environment(VectorXd theta_star, double sigma, std::uint64_t seed)
    : theta_star_(std::move(theta_star)), sigma_(sigma), rng_(seed) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
}

double Environment::pull(const VectorXd& x) {
  if (x.size() != theta_star_.size()) throw std::invalid_argument("action has wrong dimension");
  // Draw even when sigma == 0 so the stream position depends only on t.
  const double noise = rng_.normal();
  return theta_star_.dot(x) + sigma_ * noise;
}

std::string_view to_string(AlgorithmMode mode) {
  switch (mode) {
    case AlgorithmMode::kApsee: return "apsee";
    case AlgorithmMode::kApseeG: return "apsee_g";
    case AlgorithmMode::kApseeGCompact: return "apsee_g_compact";
  }
  return "unknown";
}

AlgorithmMode parse_algorithm_mode(std::string_view name) {
  if (name == "apsee") return AlgorithmMode::kApsee;
  if (name == "apsee_g") return AlgorithmMode::kApseeG;
  if (name == "apsee_g_compact") return AlgorithmMode::kApseeGCompact;
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

std::string_view to_string(Phase phase) {
  return phase == Phase::kExplore ? "explore" : "exploit";
}

Agent::Agent(const ActionSet& geometry, ExplorationBasis basis, AgentConfig config)
    : geometry_(geometry), basis_(std::move(basis)), config_(config) {
  const int d = geometry_.dimension();
  if (basis_.dimension() != d) throw std::invalid_argument("basis and action set disagree on d");
  if (config_.h < 1 || config_.h > d) throw std::invalid_argument("sparsity H must lie in [1, d]");
  if (!(config_.delta > 0.0 && config_.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  cycle_rewards_ = VectorXd::Zero(d);
  ols_ = OlsState(d);
}

PlannedAction Agent::select_action() const {
  PlannedAction planned;
  planned.phase = phase_;
  planned.cycle = cycle_;
  if (phase_ == Phase::kExplore) {
    planned.basis_index = step_;
    planned.action = basis_.actions.col(step_);
    planned.support = basis_.supports[step_];
  } else {
    planned.action = exploit_action_;
    planned.support = exploit_support_;
  }
  pending_ = true;
  return planned;
}

void Agent::observe(double reward) {
  if (!pending_) throw std::logic_error("observe() called without a pending action");
  pending_ = false;
  ++step_;
  if (phase_ == Phase::kExplore) {
    cycle_rewards_(step_ - 1) = reward;
    if (step_ == basis_.dimension()) finish_exploration();
  } else if (step_ == exploit_length_) {
    start_next_cycle();
  }
}

void Agent::finish_exploration() {
  const int d = geometry_.dimension();
  const int h = config_.h;
  ols_ = ols_update(std::move(ols_), basis_, cycle_rewards_);

  CycleRecord record;
  record.cycle = cycle_;
  record.eps = error_radius(basis_, cycle_, d, config_.delta);
  record.theta_hat = ols_.theta_hat;

  SupportSet provisional;
  if (config_.mode == AlgorithmMode::kApsee) {
    if (h < d) {
      SortGap sorted = empirical_sort_gap(ols_.theta_hat, h);
      record.gap = sorted.gap;
      provisional = std::move(sorted.support);
    } else {
      // Full support: nothing to distinguish.
      record.gap = std::numeric_limits<double>::infinity();
      provisional = SupportSet::full(d);
    }
  } else {
    GreedyTrace greedy = greedy_select(geometry_, ols_.theta_hat, h);
    record.gap = greedy.min_gap;
    provisional = std::move(greedy.support);
  }

  if (!support_found_) {
    bool lock = false;
    if (config_.mode == AlgorithmMode::kApsee) {
      lock = record.gap > 2.0 * record.eps;
    } else if (config_.mode == AlgorithmMode::kApseeG) {
      lock = record.gap > 2.0 * geometry_.radius() * record.eps;
    }
    if (lock) {
      support_found_ = true;
      estimated_support_ = provisional;
      lock_cycle_ = cycle_;
      record.lock_event = true;
    }
  }
  record.locked = support_found_;
  record.estimate = support_found_ ? estimated_support_ : provisional;

  if (config_.mode == AlgorithmMode::kApseeGCompact) {
    exploit_length_ = floor_sqrt(cycle_);
    exploit_support_ = provisional;
  } else {
    exploit_length_ = support_found_ ? cycle_ : 0;
    exploit_support_ = estimated_support_;
  }
  if (exploit_length_ > 0) {
    exploit_action_ = geometry_.best_action_on_support(exploit_support_, ols_.theta_hat);
    record.exploit_action = exploit_action_;
  }
  record.exploit_length = exploit_length_;
  cycles_.push_back(std::move(record));

  if (exploit_length_ > 0) {
    phase_ = Phase::kExploit;
    step_ = 0;
  } else {
    start_next_cycle();
  }
}

void Agent::start_next_cycle() {
  ++cycle_;
  step_ = 0;
  phase_ = Phase::kExplore;
  cycle_rewards_.setZero();
}

std::optional<std::size_t> RunTrace::cycle_index(int c) const {
  if (c < 1 || cycles.empty()) return std::nullopt;
  // Records are contiguous in cycle order, possibly starting after cycle 1
  // when the agent had been run before.
  const int first = cycles.front().cycle;
  if (c < first || c - first >= static_cast<int>(cycles.size())) return std::nullopt;
  return static_cast<std::size_t>(c - first);
}

VectorXd RunTrace::action_at(std::int64_t t, const ExplorationBasis& basis) const {
  if (t < 1 || t > static_cast<std::int64_t>(steps.size())) {
    throw std::out_of_range("step index outside the trace");
  }
  const StepRecord& step = steps[t - 1];
  if (step.phase == Phase::kExplore) return basis.actions.col(step.basis_index);
  return cycles.at(*cycle_index(step.cycle)).exploit_action;
}

SupportSet RunTrace::support_at(std::int64_t t, const ExplorationBasis& basis) const {
  if (t < 1 || t > static_cast<std::int64_t>(steps.size())) {
    throw std::out_of_range("step index outside the trace");
  }
  const StepRecord& step = steps[t - 1];
  if (step.phase == Phase::kExplore) return basis.supports[step.basis_index];
  const VectorXd& x = cycles.at(*cycle_index(step.cycle)).exploit_action;
  const int d = static_cast<int>(x.size());
  std::vector<int> indices;
  for (int i = 0; i < d; ++i) {
    if (x(i) != 0.0) indices.push_back(i);
  }
  return SupportSet(d, d, std::move(indices));
}

RunTrace run_horizon(Environment& env, Agent& agent, std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  RunTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const PlannedAction planned = agent.select_action();
    StepRecord step;
    step.cycle = planned.cycle;
    step.phase = planned.phase;
    step.basis_index = planned.basis_index;
    step.expected_reward = env.expected_reward(planned.action);
    step.reward = env.pull(planned.action);
    agent.observe(step.reward);
    trace.steps.push_back(step);
  }
  trace.cycles = agent.cycles();
  trace.lock_cycle = agent.lock_cycle();
  return trace;
}

}  // namespace sparse_bandit
