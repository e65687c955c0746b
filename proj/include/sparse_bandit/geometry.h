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

// Action sets X and the per-support linear maximization
//
//   h(S; theta) = max { theta^T x : x in X, supp(x) subset of S }
//
// solved in closed form for each supported geometry.

#ifndef SPARSE_BANDIT_GEOMETRY_H_
#define SPARSE_BANDIT_GEOMETRY_H_

#include <Eigen/Core>
#include <string>
#include <string_view>
#include <vector>

#include "sparse_bandit/rng.h"

namespace sparse_bandit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Norm below which theta restricted to a support is treated as zero.
inline constexpr double kZeroThetaNorm = 1e-12;
// Slack on the defining inequality of X in membership tests.
inline constexpr double kMembershipTolerance = 1e-9;

// A subset of [0, d) holding at most `capacity` indices, kept sorted so that
// equality is structural.
class SupportSet {
 public:
  SupportSet() = default;
  SupportSet(int dimension, int capacity, std::vector<int> indices = {});

  static SupportSet full(int dimension);

  int dimension() const { return dimension_; }
  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  const std::vector<int>& indices() const { return indices_; }

  bool contains(int index) const;
  bool is_subset_of(const SupportSet& other) const;
  // Number of shared indices.
  int overlap(const SupportSet& other) const;

  // Copy with `index` added. Throws if that would exceed the capacity.
  SupportSet with(int index) const;
  // Same indices under a different capacity.
  SupportSet with_capacity(int capacity) const;

  std::string to_string() const;

  friend bool operator==(const SupportSet& a, const SupportSet& b) {
    return a.dimension_ == b.dimension_ && a.indices_ == b.indices_;
  }

 private:
  int dimension_ = 0;
  int capacity_ = 0;
  std::vector<int> indices_;
};

enum class GeometryKind { kEuclideanBall, kEllipsoid, kLpBall, kL1Ball, kHypercube };

std::string_view to_string(GeometryKind kind);
GeometryKind parse_geometry_kind(std::string_view name);

// Immutable description of a compact action set containing the origin.
class ActionSet {
 public:
  static ActionSet euclidean_ball(int dimension, double radius);
  // {x : x^T A x <= 1}. A must be symmetric positive definite. Experiment
  // instances additionally keep lambda_max(A) <= 1.
  static ActionSet ellipsoid(const MatrixXd& a);
  // {x : ||x||_p <= radius}, p in (1, 2].
  static ActionSet lp_ball(int dimension, double p, double radius);
  static ActionSet l1_ball(int dimension, double radius);
  // Box [lower_i, upper_i]; every interval must contain 0.
  static ActionSet hypercube(const VectorXd& lower, const VectorXd& upper);

  GeometryKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  // sup over X of the Euclidean norm (L_X).
  double radius() const { return radius_; }
  bool strongly_convex() const { return kind_ != GeometryKind::kL1Ball &&
                                        kind_ != GeometryKind::kHypercube; }

  const MatrixXd& matrix() const { return matrix_; }
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }
  double p() const { return p_; }
  double q() const { return q_; }
  const VectorXd& lower() const { return lower_; }
  const VectorXd& upper() const { return upper_; }

  double value_on_support(const SupportSet& support, const VectorXd& theta) const;
  VectorXd best_action_on_support(const SupportSet& support,
                                  const VectorXd& theta) const;
  bool contains(const VectorXd& x) const;

  // Largest s >= 0 with s * direction in X (infinity for the zero vector on
  // bounded-gauge sets).
  double max_scale(const VectorXd& direction) const;

  std::string describe() const;

 private:
  ActionSet() = default;
  void check(const SupportSet& support, const VectorXd& theta) const;

  GeometryKind kind_ = GeometryKind::kEuclideanBall;
  int dimension_ = 0;
  double radius_ = 0.0;
  MatrixXd matrix_;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
  double p_ = 2.0;
  double q_ = 2.0;
  VectorXd lower_;
  VectorXd upper_;
};

// Random symmetric positive-definite matrix Q diag(lambda) Q^T with Q Haar
// orthogonal and eigenvalues uniform in [lambda_lo, lambda_hi]. The largest
// eigenvalue is pinned to lambda_hi and the smallest to lambda_lo.
MatrixXd random_spd_matrix(int dimension, double lambda_lo, double lambda_hi,
                           Rng& rng);

// Random orthogonal matrix from the QR factorization of a matrix with i.i.d.
// entries (standard normal, or uniform on [-1, 1]).
MatrixXd random_orthogonal(int dimension, bool gaussian, Rng& rng);

// Reads a dense matrix from comma-separated rows.
MatrixXd load_matrix_csv(const std::string& path);

}  // namespace sparse_bandit

#endif  // SPARSE_BANDIT_GEOMETRY_H_
