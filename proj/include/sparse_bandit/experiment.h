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

// Multi-trial experiments: instance construction, regret ledgers against the
// hindsight optimum, support-recovery tracking and cross-trial aggregates.

#ifndef SPARSE_BANDIT_EXPERIMENT_H_
#define SPARSE_BANDIT_EXPERIMENT_H_

#include <cstdint>
#include <vector>

#include "sparse_bandit/algorithms.h"
#include "sparse_bandit/config.h"
#include "sparse_bandit/geometry.h"
#include "sparse_bandit/oracles.h"

namespace sparse_bandit {

// Parameter vector whose sorted magnitudes have gap exactly `gap` between
// ranks h and h+1. kStandard spaces the top h magnitudes 2 * gap apart;
// kAdversarial packs them within 1e-6 of each other. Signs and positions are
// random. Throws when the top magnitude would exceed `max_magnitude`.
VectorXd make_gap_controlled_theta(int d, int h, double gap, GapStyle style,
                                   std::uint64_t seed, double max_magnitude = 2.0);

// Action set for one trial (random ellipsoids are drawn from `seed`).
ActionSet make_geometry(const ExperimentConfig& config, std::uint64_t seed);

// Hindsight optimum over H-sparse actions. Enumerates supports when C(d, H)
// fits the budget; otherwise falls back to the geometries whose greedy or
// top-H answer is exact.
SparseSolution benchmark_optimum(const ActionSet& geometry, const VectorXd& theta, int h);

// Geometry, parameter and derived seeds of one trial. Trial i is seeded with
// config.seed + i, independently of the other trials.
struct TrialInstance {
  ActionSet geometry;
  VectorXd theta_star;
  std::uint64_t basis_seed = 0;
  std::uint64_t noise_seed = 0;
};

TrialInstance make_trial_instance(const ExperimentConfig& config, int trial);

struct CycleSummary {
  int cycle = 0;
  double eps = 0.0;
  double gap = 0.0;
  bool locked = false;
  double ols_error = 0.0;
  double overlap = 0.0;  // |estimate n S*| / H
};

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  VectorXd theta_star;
  SupportSet optimal_support;     // S*, from the benchmark
  SupportSet reference_support;   // top-H (APSEE) or greedy (APSEE_G) support of theta*
  double opt_value = 0.0;
  double alpha = 1.0;
  double signal_gap = 0.0;        // sorted gap or minimum greedy gap of theta*
  double h1 = 0.0;                // with the true sigma
  double c0 = 0.0;                // warm-up bound in cycles (inf when the gap is 0)

  int lock_cycle = 0;             // 0 when the support never locked
  SupportSet locked_support;
  bool locked_matches_reference = false;
  // First cycle from which the agent's estimate equals S* through the end of
  // the run; 0 if the final estimate differs.
  int recovery_cycle = 0;
  int cycles_completed = 0;

  // Per step, present when steps are recorded.
  std::vector<int> cycle;
  std::vector<Phase> phase;
  std::vector<double> inst_regret;
  std::vector<double> cum_regret;
  std::vector<double> inst_alpha_regret;
  std::vector<double> cum_alpha_regret;
  std::vector<double> overlap;

  std::vector<CycleSummary> cycles;

  double final_regret = 0.0;
  double final_alpha_regret = 0.0;
  double min_inst_regret = 0.0;
  std::vector<double> checkpoint_regret;        // aligned with config.checkpoints
  std::vector<double> checkpoint_alpha_regret;
};

struct RunOptions {
  bool record_steps = true;
  // Worker count; 0 reads SPARSE_BANDIT_THREADS, else hardware concurrency.
  int threads = 0;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (0 for one trial)
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialResult> trials;

  // Cross-trial curves indexed by t - 1 (empty when steps are not recorded).
  std::vector<double> mean_regret;
  std::vector<double> std_regret;
  std::vector<double> mean_alpha_regret;
  std::vector<double> std_alpha_regret;
  std::vector<double> mean_overlap;

  MeanStd final_regret;
  MeanStd final_alpha_regret;
  std::vector<MeanStd> checkpoint_regret;
  std::vector<MeanStd> checkpoint_alpha_regret;
  double mean_alpha = 0.0;
  double lock_rate = 0.0;
  double mean_lock_cycle = 0.0;  // over locking trials; NaN if none locked
  double locked_correct_rate = 0.0;  // over locking trials; NaN if none locked
  double mean_c0 = 0.0;
};

int worker_count(int requested);

TrialResult run_trial(const ExperimentConfig& config, int trial, bool record_steps);
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

MeanStd mean_std(const std::vector<double>& values);

}  // namespace sparse_bandit

#endif  // SPARSE_BANDIT_EXPERIMENT_H_
