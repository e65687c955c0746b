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

// Sparse-action selection for a known parameter vector theta: the exact
// top-H rule for Euclidean balls, greedy marginal-gain selection for any
// geometry, exhaustive enumeration, and submodularity-ratio certificates.

#ifndef SPARSE_BANDIT_ORACLES_H_
#define SPARSE_BANDIT_ORACLES_H_

#include <cstdint>
#include <vector>

#include "sparse_bandit/geometry.h"

namespace sparse_bandit {

struct SparseSolution {
  SupportSet support;
  VectorXd action;
  double value = 0.0;
};

// Record of one greedy run. Step k (0-based) chose selected[k] with gain
// marginal_gains[k]; step_gaps[k] is best minus second-best gain at that step
// (+inf when a single candidate remained).
struct GreedyTrace {
  std::vector<int> selected;
  std::vector<double> marginal_gains;
  std::vector<double> step_gaps;
  double min_gap = 0.0;
  SupportSet support;
  double value = 0.0;

  friend bool operator==(const GreedyTrace&, const GreedyTrace&) = default;
};

struct RatioCertificate {
  double gamma = 1.0;
  double alpha = 0.0;
  std::int64_t instance_count = 0;
  bool exhaustive = true;
};

enum class RatioMode { kExhaustive, kSampled };

inline constexpr std::int64_t kBruteForceBudget = 1'000'000;
inline constexpr int kExhaustiveRatioMaxDimension = 10;

// Top-H magnitudes of theta (ties to the lower index). Ball geometries only.
SparseSolution exact_top_h(const ActionSet& geometry, const VectorXd& theta, int h);

// Greedy maximization of S -> h(S; theta) under |S| <= h. Always selects
// exactly h indices; gain ties go to the lower index.
GreedyTrace greedy_select(const ActionSet& geometry, const VectorXd& theta, int h);

// Enumerates all supports of size exactly h in lexicographic order and keeps
// the first maximizer. Throws when C(d, h) exceeds kBruteForceBudget.
SparseSolution brute_force(const ActionSet& geometry, const VectorXd& theta, int h);

// Submodularity ratio of S -> h(S; theta) over all subsets of [d]:
//
//   gamma = min over (S, Omega) of
//           sum_{w in Omega \ S} [h(S + w) - h(S)] / [h(S u Omega) - h(S)]
//
// with 0/0 := 1 and each ratio clamped to [0, 1]. Exhaustive mode needs
// d <= kExhaustiveRatioMaxDimension; sampled mode draws `sample_pairs`
// random pairs and only yields an upper estimate of gamma.
RatioCertificate submodularity_ratio(const ActionSet& geometry, const VectorXd& theta,
                                     RatioMode mode, std::int64_t sample_pairs = 0,
                                     std::uint64_t seed = 0);

// alpha = 1 - exp(-gamma).
double approximation_factor(double gamma);

// Spot check of convex-hull regularity: draws `samples` random pairs of
// per-support optimal actions x*(S1), x*(S2) (|S| <= h) and a random convex
// weight, and returns the fraction of combinations that lie in X.
double hull_regularity_rate(const ActionSet& geometry, const VectorXd& theta, int h,
                            int samples, std::uint64_t seed);

}  // namespace sparse_bandit

#endif  // SPARSE_BANDIT_ORACLES_H_
