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

// Exploration bases, the cycle-averaged OLS estimator, anytime error radii
// and the theoretical warm-up length.

#ifndef SPARSE_BANDIT_ESTIMATION_H_
#define SPARSE_BANDIT_ESTIMATION_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "sparse_bandit/geometry.h"

namespace sparse_bandit {

enum class BasisKind { kStandard, kGaussianOrthogonal, kUniformOrthogonal };

std::string_view to_string(BasisKind kind);
BasisKind parse_basis_kind(std::string_view name);

// d feasible H-sparse exploration actions b_0..b_{d-1} (columns of `actions`)
// and the derived design quantities.
struct ExplorationBasis {
  BasisKind kind = BasisKind::kStandard;
  MatrixXd actions;
  std::vector<SupportSet> supports;
  MatrixXd gram;          // B = sum_k b_k b_k^T
  MatrixXd gram_inverse;  // B^{-1}
  double lambda0 = 0.0;   // lambda_min(B)
  double trace = 0.0;     // Tr(B)
  double sigma = 0.0;
  double h1 = 0.0;        // 2 sigma^2 Tr(B) / lambda0^2

  int dimension() const { return static_cast<int>(actions.cols()); }
  VectorXd action(int k) const { return actions.col(k); }
};

// lambda_min(B) at or below this counts as singular.
inline constexpr double kMinBasisEigenvalue = 1e-10;
inline constexpr int kBasisRetries = 100;

// Builds a basis of the requested kind inside `geometry`.
//
// standard: r_k e_k with r_k the largest feasible step along +e_k (or -e_k
//   when +e_k is infeasible).
// *_orthogonal: columns of a random orthogonal matrix, truncated to their
//   top-h magnitudes when h < d and scaled onto the boundary of X. Random
//   draws are repeated until B is invertible.
ExplorationBasis make_basis(BasisKind kind, const ActionSet& geometry, int h,
                            double sigma, std::uint64_t seed);

// Wraps explicit actions (columns) after checking feasibility, sparsity and
// invertibility.
ExplorationBasis basis_from_actions(BasisKind kind, const MatrixXd& actions,
                                    const ActionSet& geometry, int h, double sigma);

// Running state of theta_hat_c = (c B)^{-1} sum_k b_k sum_s Y_k(s).
struct OlsState {
  int cycle = 0;
  VectorXd reward_sums;
  VectorXd theta_hat;

  explicit OlsState(int dimension = 0)
      : reward_sums(VectorXd::Zero(dimension)), theta_hat(VectorXd::Zero(dimension)) {}
  bool valid() const { return cycle >= 1; }
};

// Adds one cycle of rewards (rewards[k] observed for b_k) and refreshes
// theta_hat from the accumulated sums.
OlsState ols_update(OlsState state, const ExplorationBasis& basis, const VectorXd& rewards);

// eps_c = sqrt(h1 ln(2 d c^2 / delta) / c); 0 when h1 == 0.
double error_radius(double h1, int c, int d, double delta);
double error_radius(const ExplorationBasis& basis, int c, int d, double delta);

struct SortGap {
  double gap = 0.0;
  SupportSet support;
};

// |v|_(h) - |v|_(h+1) over magnitudes sorted descending (ties to the lower
// index) and the indices of the top h. Requires 1 <= h < d.
SortGap empirical_sort_gap(const VectorXd& v, int h);

// C0 = (32 h1 / D^2) ln(2 d / delta) + (128 h1 / D^2) ln(64 h1 / D^2), in
// cycles; 0 when h1 == 0.
double warmup_bound_c0(double h1, double delta_min, int d, double delta);

}  // namespace sparse_bandit

#endif  // SPARSE_BANDIT_ESTIMATION_H_
