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

#include "sparse_bandit/estimation.h"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sparse_bandit {
namespace {

SupportSet support_of(const VectorXd& v, int h) {
  std::vector<int> indices;
  for (int i = 0; i < v.size(); ++i) {
    if (v(i) != 0.0) indices.push_back(i);
  }
  if (static_cast<int>(indices.size()) > h) {
    throw std::invalid_argument("exploration action has more than H nonzeros");
  }
  return SupportSet(static_cast<int>(v.size()), h, std::move(indices));
}

std::vector<int> magnitude_order(const VectorXd& v) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(v(a)) > std::abs(v(b));
  });
  return order;
}

// Zeroes everything except the h largest magnitudes.
VectorXd keep_top(const VectorXd& v, int h) {
  const std::vector<int> order = magnitude_order(v);
  VectorXd out = VectorXd::Zero(v.size());
  for (int i = 0; i < h; ++i) out(order[i]) = v(order[i]);
  return out;
}

// On a box with a one-sided interval, a coordinate can only move in the
// direction that interval allows; flip such coordinates accordingly.
VectorXd fold_into_box(const ActionSet& geometry, VectorXd v) {
  if (geometry.kind() != GeometryKind::kHypercube) return v;
  for (int i = 0; i < v.size(); ++i) {
    if (geometry.lower()(i) == 0.0) v(i) = std::abs(v(i));
    if (geometry.upper()(i) == 0.0) v(i) = -std::abs(v(i));
  }
  return v;
}

// s * v on the boundary of X, using -v when that reaches further.
VectorXd scale_to_boundary(const ActionSet& geometry, const VectorXd& v) {
  const double forward = geometry.max_scale(v);
  const double backward = geometry.max_scale(-v);
  if (!std::isfinite(forward) || !std::isfinite(backward)) {
    throw std::invalid_argument("cannot scale a zero direction onto the action set");
  }
  return forward >= backward ? VectorXd(forward * v) : VectorXd(-backward * v);
}

}  // namespace

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::kStandard: return "standard";
    case BasisKind::kGaussianOrthogonal: return "gaussian_orthogonal";
    case BasisKind::kUniformOrthogonal: return "uniform_orthogonal";
  }
  return "unknown";
}

BasisKind parse_basis_kind(std::string_view name) {
  if (name == "standard") return BasisKind::kStandard;
  if (name == "gaussian_orthogonal") return BasisKind::kGaussianOrthogonal;
  if (name == "uniform_orthogonal") return BasisKind::kUniformOrthogonal;
  throw std::invalid_argument("unknown basis kind: " + std::string(name));
}

ExplorationBasis basis_from_actions(BasisKind kind, const MatrixXd& actions,
                                    const ActionSet& geometry, int h, double sigma) {
  const int d = geometry.dimension();
  if (actions.rows() != d || actions.cols() != d) {
    throw std::invalid_argument("exploration basis must be d x d");
  }
  if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
  ExplorationBasis basis;
  basis.kind = kind;
  basis.actions = actions;
  for (int k = 0; k < d; ++k) {
    const VectorXd b = actions.col(k);
    if (!geometry.contains(b)) {
      throw std::invalid_argument("exploration action " + std::to_string(k) +
                                  " lies outside the action set");
    }
    basis.supports.push_back(support_of(b, h));
  }
  basis.gram = actions * actions.transpose();
  basis.gram = 0.5 * (basis.gram + basis.gram.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(basis.gram, Eigen::EigenvaluesOnly);
  basis.lambda0 = eig.eigenvalues()(0);
  if (!(basis.lambda0 > kMinBasisEigenvalue)) {
    throw std::invalid_argument("exploration basis is not invertible");
  }
  basis.gram_inverse = basis.gram.llt().solve(MatrixXd::Identity(d, d));
  basis.trace = basis.gram.trace();
  basis.sigma = sigma;
  basis.h1 = 2.0 * sigma * sigma * basis.trace / (basis.lambda0 * basis.lambda0);
  return basis;
}

ExplorationBasis make_basis(BasisKind kind, const ActionSet& geometry, int h,
                            double sigma, std::uint64_t seed) {
  const int d = geometry.dimension();
  if (h < 1 || h > d) throw std::invalid_argument("sparsity H must lie in [1, d]");

  if (kind == BasisKind::kStandard) {
    MatrixXd actions = MatrixXd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      actions.col(k) = scale_to_boundary(geometry, VectorXd::Unit(d, k));
    }
    return basis_from_actions(kind, actions, geometry, h, sigma);
  }

  Rng rng(seed);
  const bool gaussian = kind == BasisKind::kGaussianOrthogonal;
  for (int attempt = 0; attempt < kBasisRetries; ++attempt) {
    const MatrixXd q = random_orthogonal(d, gaussian, rng);
    MatrixXd actions(d, d);
    for (int k = 0; k < d; ++k) {
      VectorXd column = fold_into_box(geometry, q.col(k));
      if (h < d) column = keep_top(column, h);
      actions.col(k) = scale_to_boundary(geometry, column);
    }
    try {
      return basis_from_actions(kind, actions, geometry, h, sigma);
    } catch (const std::invalid_argument&) {
      // Singular after truncation; draw again.
    }
  }
  throw std::runtime_error("could not draw an invertible exploration basis");
}

OlsState ols_update(OlsState state, const ExplorationBasis& basis, const VectorXd& rewards) {
  const int d = basis.dimension();
  if (rewards.size() != d) throw std::invalid_argument("need one reward per basis action");
  if (state.reward_sums.size() != d) state = OlsState(d);
  state.cycle += 1;
  state.reward_sums += rewards;
  state.theta_hat = basis.gram_inverse * (basis.actions * state.reward_sums) /
                    static_cast<double>(state.cycle);
  return state;
}

double error_radius(double h1, int c, int d, double delta) {
  if (c < 1) throw std::invalid_argument("error_radius needs c >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (h1 == 0.0) return 0.0;
  const double cc = static_cast<double>(c);
  return std::sqrt(h1 * std::log(2.0 * d * cc * cc / delta) / cc);
}

double error_radius(const ExplorationBasis& basis, int c, int d, double delta) {
  return error_radius(basis.h1, c, d, delta);
}

SortGap empirical_sort_gap(const VectorXd& v, int h) {
  const int d = static_cast<int>(v.size());
  if (h < 1 || h >= d) throw std::invalid_argument("sort gap needs 1 <= H < d");
  std::vector<int> order = magnitude_order(v);
  SortGap result;
  result.gap = std::abs(v(order[h - 1])) - std::abs(v(order[h]));
  order.resize(h);
  result.support = SupportSet(d, h, std::move(order));
  return result;
}

double warmup_bound_c0(double h1, double delta_min, int d, double delta) {
  if (!(delta_min > 0.0)) throw std::invalid_argument("C0 needs a positive signal gap");
  if (h1 < 0.0) throw std::invalid_argument("h1 must be non-negative");
  if (h1 == 0.0) return 0.0;
  const double scale = h1 / (delta_min * delta_min);
  return 32.0 * scale * std::log(2.0 * d / delta) + 128.0 * scale * std::log(64.0 * scale);
}

}  // namespace sparse_bandit
