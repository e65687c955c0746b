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

#include "sparse_bandit/geometry.h"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sparse_bandit {
namespace {

constexpr double kSymmetryTolerance = 1e-10;
constexpr double kEigenTolerance = 1e-10;

VectorXd restrict_to(const SupportSet& support, const VectorXd& v) {
  VectorXd out(support.size());
  for (int j = 0; j < support.size(); ++j) out(j) = v(support.indices()[j]);
  return out;
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

// ---------------------------------------------------------------------------
// SupportSet

SupportSet::SupportSet(int dimension, int capacity, std::vector<int> indices)
    : dimension_(dimension), capacity_(capacity), indices_(std::move(indices)) {
  if (dimension < 0 || capacity < 0 || capacity > dimension) {
    throw std::invalid_argument("SupportSet: capacity must lie in [0, d]");
  }
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw std::invalid_argument("SupportSet: duplicate index");
  }
  if (!indices_.empty() && (indices_.front() < 0 || indices_.back() >= dimension)) {
    throw std::invalid_argument("SupportSet: index out of range");
  }
  if (size() > capacity_) {
    throw std::invalid_argument("SupportSet: more indices than capacity " +
                                std::to_string(capacity_));
  }
}

SupportSet SupportSet::full(int dimension) {
  std::vector<int> all(dimension);
  for (int i = 0; i < dimension; ++i) all[i] = i;
  return SupportSet(dimension, dimension, std::move(all));
}

bool SupportSet::contains(int index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool SupportSet::is_subset_of(const SupportSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

int SupportSet::overlap(const SupportSet& other) const {
  int count = 0;
  for (int i : indices_) count += other.contains(i) ? 1 : 0;
  return count;
}

SupportSet SupportSet::with(int index) const {
  std::vector<int> grown = indices_;
  grown.push_back(index);
  return SupportSet(dimension_, capacity_, std::move(grown));
}

SupportSet SupportSet::with_capacity(int capacity) const {
  return SupportSet(dimension_, capacity, indices_);
}

std::string SupportSet::to_string() const {
  std::string out = "{";
  for (std::size_t j = 0; j < indices_.size(); ++j) {
    if (j > 0) out += ",";
    out += std::to_string(indices_[j]);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// GeometryKind

std::string_view to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::kEuclideanBall: return "euclidean_ball";
    case GeometryKind::kEllipsoid: return "ellipsoid";
    case GeometryKind::kLpBall: return "lp_ball";
    case GeometryKind::kL1Ball: return "l1_ball";
    case GeometryKind::kHypercube: return "hypercube";
  }
  return "unknown";
}

GeometryKind parse_geometry_kind(std::string_view name) {
  for (auto kind : {GeometryKind::kEuclideanBall, GeometryKind::kEllipsoid,
                    GeometryKind::kLpBall, GeometryKind::kL1Ball,
                    GeometryKind::kHypercube}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown geometry kind: " + std::string(name));
}

// ---------------------------------------------------------------------------
// ActionSet construction

ActionSet ActionSet::euclidean_ball(int dimension, double radius) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  ActionSet set;
  set.kind_ = GeometryKind::kEuclideanBall;
  set.dimension_ = dimension;
  set.radius_ = radius;
  return set;
}

ActionSet ActionSet::ellipsoid(const MatrixXd& a) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw std::invalid_argument("ellipsoid matrix must be square and non-empty");
  }
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw std::invalid_argument("ellipsoid matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > kEigenTolerance)) {
    throw std::invalid_argument("ellipsoid matrix is not positive definite");
  }
  ActionSet set;
  set.kind_ = GeometryKind::kEllipsoid;
  set.dimension_ = static_cast<int>(a.rows());
  set.matrix_ = 0.5 * (a + a.transpose());
  set.lambda_min_ = lo;
  set.lambda_max_ = hi;
  set.radius_ = 1.0 / std::sqrt(lo);
  return set;
}

ActionSet ActionSet::lp_ball(int dimension, double p, double radius) {
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (1, 2]");
  ActionSet set = euclidean_ball(dimension, radius);
  set.kind_ = GeometryKind::kLpBall;
  set.p_ = p;
  set.q_ = p / (p - 1.0);
  return set;
}

ActionSet ActionSet::l1_ball(int dimension, double radius) {
  ActionSet set = euclidean_ball(dimension, radius);
  set.kind_ = GeometryKind::kL1Ball;
  set.p_ = 1.0;
  set.q_ = std::numeric_limits<double>::infinity();
  return set;
}

ActionSet ActionSet::hypercube(const VectorXd& lower, const VectorXd& upper) {
  if (lower.size() < 1 || lower.size() != upper.size()) {
    throw std::invalid_argument("hypercube bounds must be non-empty and equal length");
  }
  double sq = 0.0;
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower(i) <= 0.0 && 0.0 <= upper(i)) || !(lower(i) < upper(i))) {
      throw std::invalid_argument("hypercube interval must contain 0 and be non-degenerate");
    }
    sq += std::max(lower(i) * lower(i), upper(i) * upper(i));
  }
  ActionSet set;
  set.kind_ = GeometryKind::kHypercube;
  set.dimension_ = static_cast<int>(lower.size());
  set.lower_ = lower;
  set.upper_ = upper;
  set.radius_ = std::sqrt(sq);
  return set;
}

// ---------------------------------------------------------------------------
// Per-support maximization

void ActionSet::check(const SupportSet& support, const VectorXd& theta) const {
  if (theta.size() != dimension_) {
    throw std::invalid_argument("theta has length " + std::to_string(theta.size()) +
                                ", expected " + std::to_string(dimension_));
  }
  if (support.dimension() != dimension_) {
    throw std::invalid_argument("support dimension does not match the action set");
  }
}

double ActionSet::value_on_support(const SupportSet& support,
                                   const VectorXd& theta) const {
  check(support, theta);
  if (support.empty()) return 0.0;
  const VectorXd sub = restrict_to(support, theta);
  if (sub.norm() < kZeroThetaNorm) return 0.0;

  switch (kind_) {
    case GeometryKind::kEuclideanBall:
      return radius_ * sub.norm();
    case GeometryKind::kEllipsoid: {
      MatrixXd block(support.size(), support.size());
      for (int r = 0; r < support.size(); ++r)
        for (int c = 0; c < support.size(); ++c)
          block(r, c) = matrix_(support.indices()[r], support.indices()[c]);
      const VectorXd solved = block.llt().solve(sub);
      return std::sqrt(std::max(0.0, sub.dot(solved)));
    }
    case GeometryKind::kLpBall:
      return radius_ * sub.lpNorm<Eigen::Infinity>() *
             std::pow((sub.cwiseAbs() / sub.lpNorm<Eigen::Infinity>())
                          .array()
                          .pow(q_)
                          .sum(),
                      1.0 / q_);
    case GeometryKind::kL1Ball:
      return radius_ * sub.lpNorm<Eigen::Infinity>();
    case GeometryKind::kHypercube: {
      double total = 0.0;
      for (int i : support.indices()) {
        total += std::max(lower_(i) * theta(i), upper_(i) * theta(i));
      }
      return total;
    }
  }
  return 0.0;
}

VectorXd ActionSet::best_action_on_support(const SupportSet& support,
                                           const VectorXd& theta) const {
  check(support, theta);
  VectorXd x = VectorXd::Zero(dimension_);
  if (support.empty()) return x;
  const VectorXd sub = restrict_to(support, theta);
  const double norm = sub.norm();
  if (norm < kZeroThetaNorm) return x;
  const auto& idx = support.indices();

  switch (kind_) {
    case GeometryKind::kEuclideanBall:
      for (int j = 0; j < support.size(); ++j) x(idx[j]) = radius_ * sub(j) / norm;
      break;
    case GeometryKind::kEllipsoid: {
      MatrixXd block(support.size(), support.size());
      for (int r = 0; r < support.size(); ++r)
        for (int c = 0; c < support.size(); ++c) block(r, c) = matrix_(idx[r], idx[c]);
      const VectorXd solved = block.llt().solve(sub);
      const double scale = std::sqrt(std::max(0.0, sub.dot(solved)));
      if (scale <= 0.0) break;
      for (int j = 0; j < support.size(); ++j) x(idx[j]) = solved(j) / scale;
      break;
    }
    case GeometryKind::kLpBall: {
      // x_i = L sign(theta_i) |theta_i|^(q-1) / ||theta_S||_q^(q-1), computed on
      // theta scaled by its max magnitude (the expression is scale invariant).
      const VectorXd scaled = sub / sub.lpNorm<Eigen::Infinity>();
      const double qnorm = std::pow(scaled.cwiseAbs().array().pow(q_).sum(), 1.0 / q_);
      for (int j = 0; j < support.size(); ++j) {
        x(idx[j]) = radius_ * sign_of(scaled(j)) *
                    std::pow(std::abs(scaled(j)) / qnorm, q_ - 1.0);
      }
      break;
    }
    case GeometryKind::kL1Ball: {
      int best = 0;  // lowest index wins ties
      for (int j = 1; j < support.size(); ++j) {
        if (std::abs(sub(j)) > std::abs(sub(best))) best = j;
      }
      x(idx[best]) = radius_ * sign_of(sub(best));
      break;
    }
    case GeometryKind::kHypercube:
      for (int i : idx) {
        if (theta(i) > 0.0) x(i) = upper_(i);
        else if (theta(i) < 0.0) x(i) = lower_(i);
      }
      break;
  }
  return x;
}

bool ActionSet::contains(const VectorXd& x) const {
  if (x.size() != dimension_) {
    throw std::invalid_argument("point has wrong dimension");
  }
  switch (kind_) {
    case GeometryKind::kEuclideanBall:
      return x.norm() <= radius_ + kMembershipTolerance;
    case GeometryKind::kEllipsoid:
      return x.dot(matrix_ * x) <= 1.0 + kMembershipTolerance;
    case GeometryKind::kLpBall:
      return std::pow(x.cwiseAbs().array().pow(p_).sum(), 1.0 / p_) <=
             radius_ + kMembershipTolerance;
    case GeometryKind::kL1Ball:
      return x.lpNorm<1>() <= radius_ + kMembershipTolerance;
    case GeometryKind::kHypercube:
      for (int i = 0; i < dimension_; ++i) {
        if (x(i) < lower_(i) - kMembershipTolerance ||
            x(i) > upper_(i) + kMembershipTolerance) {
          return false;
        }
      }
      return true;
  }
  return false;
}

double ActionSet::max_scale(const VectorXd& direction) const {
  if (direction.size() != dimension_) {
    throw std::invalid_argument("direction has wrong dimension");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double gauge = 0.0;
  switch (kind_) {
    case GeometryKind::kEuclideanBall:
      gauge = direction.norm() / radius_;
      break;
    case GeometryKind::kEllipsoid:
      gauge = std::sqrt(std::max(0.0, direction.dot(matrix_ * direction)));
      break;
    case GeometryKind::kLpBall:
      gauge = std::pow(direction.cwiseAbs().array().pow(p_).sum(), 1.0 / p_) / radius_;
      break;
    case GeometryKind::kL1Ball:
      gauge = direction.lpNorm<1>() / radius_;
      break;
    case GeometryKind::kHypercube: {
      double scale = kInf;
      for (int i = 0; i < dimension_; ++i) {
        if (direction(i) > 0.0) scale = std::min(scale, upper_(i) / direction(i));
        if (direction(i) < 0.0) scale = std::min(scale, lower_(i) / direction(i));
      }
      return scale;
    }
  }
  return gauge > 0.0 ? 1.0 / gauge : kInf;
}

std::string ActionSet::describe() const {
  std::ostringstream out;
  out << to_string(kind_) << "(d=" << dimension_ << ", L_max=" << radius_;
  if (kind_ == GeometryKind::kEllipsoid) {
    out << ", lambda_min=" << lambda_min_ << ", lambda_max=" << lambda_max_;
  }
  if (kind_ == GeometryKind::kLpBall) out << ", p=" << p_;
  out << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// Matrix helpers

MatrixXd random_orthogonal(int dimension, bool gaussian, Rng& rng) {
  MatrixXd m(dimension, dimension);
  for (int c = 0; c < dimension; ++c)
    for (int r = 0; r < dimension; ++r)
      m(r, c) = gaussian ? rng.normal() : rng.uniform(-1.0, 1.0);
  Eigen::HouseholderQR<MatrixXd> qr(m);
  MatrixXd q = qr.householderQ() * MatrixXd::Identity(dimension, dimension);
  const MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dimension; ++c) {
    if (r(c, c) < 0.0) q.col(c) *= -1.0;
  }
  return q;
}

MatrixXd random_spd_matrix(int dimension, double lambda_lo, double lambda_hi,
                           Rng& rng) {
  if (!(0.0 < lambda_lo && lambda_lo <= lambda_hi)) {
    throw std::invalid_argument("eigenvalue range must satisfy 0 < lo <= hi");
  }
  VectorXd lambda(dimension);
  for (int i = 0; i < dimension; ++i) lambda(i) = rng.uniform(lambda_lo, lambda_hi);
  lambda(0) = lambda_hi;
  if (dimension > 1) lambda(1) = lambda_lo;
  const MatrixXd q = random_orthogonal(dimension, true, rng);
  const MatrixXd a = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

MatrixXd load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("ragged matrix file: " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty matrix file: " + path);
  MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace sparse_bandit
