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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "test_util.h"

namespace sparse_bandit {
namespace {

using testing::random_support;
using testing::random_vector;
using testing::sample_geometries;

VectorXd vec(std::initializer_list<double> values) {
  VectorXd v(values.size());
  int i = 0;
  for (const double x : values) v(i++) = x;
  return v;
}

MatrixXd diag(std::initializer_list<double> values) { return vec(values).asDiagonal(); }

// Brute-force maximum of 2 x0 + 2 x1 over the boundary x^T diag(1, 4) x = 1,
// parametrized as (cos t, sin t / 2).
double ellipsoid_grid_max() {
  constexpr int kSteps = 2'000'000;
  double best = -1.0;
  for (int i = 0; i < kSteps; ++i) {
    const double t = 2.0 * std::numbers::pi * i / kSteps;
    best = std::max(best, 2.0 * std::cos(t) + 2.0 * 0.5 * std::sin(t));
  }
  return best;
}

// Brute-force maximum of x0 + x1 over the l_{1.5} unit sphere in the first
// quadrant: x1 = (1 - x0^1.5)^(2/3).
std::pair<double, double> lp_grid_max() {
  constexpr int kSteps = 2'000'000;
  double best = -1.0;
  double argmax = 0.0;
  for (int i = 0; i <= kSteps; ++i) {
    const double x0 = static_cast<double>(i) / kSteps;
    const double x1 = std::pow(std::max(0.0, 1.0 - std::pow(x0, 1.5)), 2.0 / 3.0);
    if (x0 + x1 > best) {
      best = x0 + x1;
      argmax = x0;
    }
  }
  return {best, argmax};
}

TEST(SupportSetTest, CanonicalizesAndValidates) {
  const SupportSet s(5, 3, {4, 0, 2});
  EXPECT_EQ(s.indices(), (std::vector<int>{0, 2, 4}));
  EXPECT_EQ(s, SupportSet(5, 4, {2, 4, 0}));
  EXPECT_THROW(SupportSet(5, 3, {1, 1}), std::invalid_argument);
  EXPECT_THROW(SupportSet(5, 3, {5}), std::invalid_argument);
  EXPECT_THROW(SupportSet(5, 3, {-1}), std::invalid_argument);
  EXPECT_THROW(SupportSet(5, 2, {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(SupportSet(3, 4), std::invalid_argument);
}

TEST(SupportSetTest, SetOperations) {
  const SupportSet s(6, 3, {1, 3});
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.with(0).indices(), (std::vector<int>{0, 1, 3}));
  EXPECT_THROW(s.with(0).with(5), std::invalid_argument);
  EXPECT_TRUE(s.is_subset_of(SupportSet::full(6)));
  EXPECT_FALSE(SupportSet::full(6).is_subset_of(s));
  EXPECT_EQ(s.overlap(SupportSet(6, 3, {3, 4, 5})), 1);
  EXPECT_EQ(s.to_string(), "{1,3}");
  EXPECT_EQ(s.with_capacity(6).capacity(), 6);
}

TEST(GeometryKindTest, RoundTripsNames) {
  for (const auto kind : {GeometryKind::kEuclideanBall, GeometryKind::kEllipsoid,
                          GeometryKind::kLpBall, GeometryKind::kL1Ball,
                          GeometryKind::kHypercube}) {
    EXPECT_EQ(parse_geometry_kind(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_geometry_kind("simplex"), std::invalid_argument);
}

TEST(ValueOnSupportTest, EuclideanBallPythagorean) {
  const ActionSet ball = ActionSet::euclidean_ball(3, 1.0);
  EXPECT_DOUBLE_EQ(ball.value_on_support(SupportSet(3, 2, {0, 1}), vec({3, 4, 0})), 5.0);
}

TEST(ValueOnSupportTest, EmptySupportIsZeroEverywhere) {
  Rng rng(1);
  for (const ActionSet& g : sample_geometries(4, rng)) {
    EXPECT_EQ(g.value_on_support(SupportSet(4, 2), random_vector(4, rng)), 0.0) << g.describe();
  }
}

TEST(ValueOnSupportTest, EllipsoidExampleMatchesGridOracle) {
  const ActionSet ell = ActionSet::ellipsoid(diag({1, 4}));
  const double value = ell.value_on_support(SupportSet::full(2), vec({2, 2}));
  EXPECT_NEAR(value, 2.2360679775, 1e-10);
  EXPECT_NEAR(value, ellipsoid_grid_max(), 1e-9);
}

TEST(ValueOnSupportTest, HypercubeSumsPositiveEntries) {
  const ActionSet cube = ActionSet::hypercube(VectorXd::Zero(3), VectorXd::Ones(3));
  EXPECT_DOUBLE_EQ(cube.value_on_support(SupportSet(3, 2, {0, 2}), vec({0.5, -0.2, 0.9})), 1.4);
}

TEST(ValueOnSupportTest, ClosedFormsPerGeometry) {
  const VectorXd theta = vec({0.3, -0.8, 0.5, 0.0});
  const SupportSet s(4, 3, {0, 1, 3});
  EXPECT_NEAR(ActionSet::lp_ball(4, 1.5, 2.0).value_on_support(s, theta),
              2.0 * std::cbrt(std::pow(0.3, 3) + std::pow(0.8, 3)), 1e-12);
  EXPECT_DOUBLE_EQ(ActionSet::l1_ball(4, 2.0).value_on_support(s, theta), 1.6);
  const ActionSet box = ActionSet::hypercube(VectorXd::Constant(4, -0.5), VectorXd::Ones(4));
  EXPECT_DOUBLE_EQ(box.value_on_support(s, theta), 0.3 + 0.4);
}

TEST(ValueOnSupportTest, DimensionMismatchThrows) {
  const ActionSet ball = ActionSet::euclidean_ball(3, 1.0);
  EXPECT_THROW(ball.value_on_support(SupportSet(3, 2), vec({1, 2})), std::invalid_argument);
  EXPECT_THROW(ball.value_on_support(SupportSet(4, 2), vec({1, 2, 3})), std::invalid_argument);
  EXPECT_THROW(ball.contains(vec({1, 2})), std::invalid_argument);
}

TEST(BestActionTest, EuclideanBallNormalizes) {
  const ActionSet ball = ActionSet::euclidean_ball(3, 1.0);
  const VectorXd x = ball.best_action_on_support(SupportSet(3, 2, {0, 1}), vec({3, 4, 0}));
  EXPECT_NEAR((x - vec({0.6, 0.8, 0.0})).norm(), 0.0, 1e-15);
}

TEST(BestActionTest, ZeroRestrictedThetaGivesZeroAction) {
  Rng rng(2);
  const VectorXd theta = vec({0.0, 0.0, 0.7, -0.2});
  const SupportSet s(4, 2, {0, 1});
  for (const ActionSet& g : sample_geometries(4, rng)) {
    EXPECT_TRUE(g.best_action_on_support(s, theta).isZero()) << g.describe();
    EXPECT_EQ(g.value_on_support(s, theta), 0.0) << g.describe();
  }
}

TEST(BestActionTest, LpBallExampleMatchesGridOracle) {
  const ActionSet lp = ActionSet::lp_ball(2, 1.5, 1.0);
  const VectorXd theta = vec({1, 1});
  const VectorXd x = lp.best_action_on_support(SupportSet::full(2), theta);
  EXPECT_NEAR(x(0), 0.6299605249, 1e-10);
  EXPECT_NEAR(x(1), 0.6299605249, 1e-10);
  EXPECT_NEAR(theta.dot(x), 1.2599210499, 1e-10);
  const auto [grid_value, grid_x0] = lp_grid_max();
  EXPECT_NEAR(theta.dot(x), grid_value, 1e-9);
  EXPECT_NEAR(x(0), grid_x0, 1e-3);
}

TEST(BestActionTest, HypercubeCoordinateRule) {
  const ActionSet cube = ActionSet::hypercube(VectorXd::Zero(3), VectorXd::Ones(3));
  const VectorXd x = cube.best_action_on_support(SupportSet(3, 2, {0, 1}), vec({0.5, -0.2, 0.9}));
  EXPECT_EQ(x, vec({1, 0, 0}));
  const ActionSet box = ActionSet::hypercube(vec({-1, -2, -3}), vec({1, 2, 3}));
  EXPECT_EQ(box.best_action_on_support(SupportSet::full(3), vec({-1, 0, 2})), vec({-1, 0, 3}));
}

TEST(BestActionTest, L1TieGoesToLowestIndex) {
  const ActionSet l1 = ActionSet::l1_ball(4, 1.0);
  const VectorXd x = l1.best_action_on_support(SupportSet::full(4), vec({0.2, -0.9, 0.9, 0.1}));
  EXPECT_EQ(x, vec({0, -1, 0, 0}));
}

TEST(MembershipTest, Examples) {
  const ActionSet ball = ActionSet::euclidean_ball(2, 1.0);
  EXPECT_TRUE(ball.contains(vec({1, 0})));
  EXPECT_FALSE(ball.contains(vec({1.1, 0})));
  EXPECT_TRUE(ActionSet::ellipsoid(diag({1, 4})).contains(vec({0, 0.5})));
  EXPECT_FALSE(ActionSet::ellipsoid(diag({1, 4})).contains(vec({0, 0.51})));
  EXPECT_TRUE(ActionSet::l1_ball(2, 1.0).contains(vec({0.5, -0.5})));
  EXPECT_FALSE(ActionSet::l1_ball(2, 1.0).contains(vec({0.5, -0.6})));
  EXPECT_FALSE(ActionSet::hypercube(VectorXd::Zero(2), VectorXd::Ones(2)).contains(vec({-0.1, 0})));
}

TEST(ConstructionTest, RejectsInvalidEllipsoidMatrices) {
  MatrixXd asym = diag({0.5, 0.5});
  asym(0, 1) = 0.1;
  EXPECT_THROW(ActionSet::ellipsoid(asym), std::invalid_argument);
  EXPECT_THROW(ActionSet::ellipsoid(diag({0.5, 0.0})), std::invalid_argument);
  EXPECT_THROW(ActionSet::ellipsoid(diag({0.5, -0.1})), std::invalid_argument);
  EXPECT_NO_THROW(ActionSet::ellipsoid(diag({1.0, 4.0})));
}

TEST(ConstructionTest, RejectsInvalidParameters) {
  EXPECT_THROW(ActionSet::euclidean_ball(3, 0.0), std::invalid_argument);
  EXPECT_THROW(ActionSet::lp_ball(3, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(ActionSet::lp_ball(3, 2.5, 1.0), std::invalid_argument);
  EXPECT_THROW(ActionSet::hypercube(vec({0.1}), vec({1})), std::invalid_argument);
  EXPECT_THROW(ActionSet::hypercube(vec({0}), vec({0})), std::invalid_argument);
}

TEST(ConstructionTest, RadiusAndFlags) {
  EXPECT_DOUBLE_EQ(ActionSet::ellipsoid(diag({1, 0.25})).radius(), 2.0);
  EXPECT_DOUBLE_EQ(ActionSet::hypercube(VectorXd::Zero(4), VectorXd::Ones(4)).radius(), 2.0);
  EXPECT_TRUE(ActionSet::lp_ball(3, 1.5, 1.0).strongly_convex());
  EXPECT_FALSE(ActionSet::l1_ball(3, 1.0).strongly_convex());
  EXPECT_FALSE(ActionSet::hypercube(VectorXd::Zero(3), VectorXd::Ones(3)).strongly_convex());
  EXPECT_DOUBLE_EQ(ActionSet::lp_ball(3, 1.5, 1.0).q(), 3.0);
}

TEST(ConstructionTest, LoadsMatrixCsv) {
  const MatrixXd a = load_matrix_csv(testing::data_path("diag_matrix.csv"));
  EXPECT_EQ(a, diag({1.0, 0.25, 0.5}));
  EXPECT_NO_THROW(ActionSet::ellipsoid(a));
  EXPECT_THROW(ActionSet::ellipsoid(load_matrix_csv(testing::data_path("asymmetric_matrix.csv"))),
               std::invalid_argument);
  EXPECT_THROW(load_matrix_csv(testing::data_path("missing.csv")), std::runtime_error);
}

TEST(RandomMatrixTest, SpdEigenvaluesPinnedToRange) {
  Rng rng(3);
  const MatrixXd a = random_spd_matrix(8, 0.2, 0.9, rng);
  EXPECT_TRUE(a.isApprox(a.transpose(), 1e-14));
  const VectorXd ev = Eigen::SelfAdjointEigenSolver<MatrixXd>(a).eigenvalues();
  EXPECT_NEAR(ev(0), 0.2, 1e-12);
  EXPECT_NEAR(ev(7), 0.9, 1e-12);
}

TEST(RandomMatrixTest, OrthogonalColumns) {
  Rng rng(4);
  for (const bool gaussian : {true, false}) {
    const MatrixXd q = random_orthogonal(7, gaussian, rng);
    EXPECT_LT((q.transpose() * q - MatrixXd::Identity(7, 7)).norm(), 1e-12);
  }
}

// Properties over random instances.

TEST(GeometryPropertyTest, ValueIsLipschitzInTheta) {
  Rng rng(10);
  for (const ActionSet& g : sample_geometries(6, rng)) {
    for (int n = 0; n < 1000; ++n) {
      const VectorXd a = random_vector(6, rng);
      const VectorXd b = random_vector(6, rng);
      const SupportSet s = random_support(6, 6, rng);
      EXPECT_LE(std::abs(g.value_on_support(s, a) - g.value_on_support(s, b)),
                g.radius() * (a - b).norm() + 1e-9)
          << g.describe();
    }
  }
}

TEST(GeometryPropertyTest, ValueIsMonotoneInSupport) {
  Rng rng(11);
  for (const ActionSet& g : sample_geometries(6, rng)) {
    for (int n = 0; n < 500; ++n) {
      const VectorXd theta = random_vector(6, rng);
      SupportSet small = random_support(6, 5, rng);
      SupportSet big = small;
      for (int i = 0; i < 6; ++i) {
        if (!big.contains(i) && rng.coin()) big = big.with(i);
      }
      EXPECT_LE(g.value_on_support(small, theta), g.value_on_support(big, theta) + 1e-12)
          << g.describe();
    }
  }
}

TEST(GeometryPropertyTest, OptimalityCertificate) {
  Rng rng(12);
  for (const ActionSet& g : sample_geometries(6, rng)) {
    for (int n = 0; n < 500; ++n) {
      const VectorXd theta = random_vector(6, rng);
      const SupportSet s = random_support(6, 6, rng);
      const VectorXd x = g.best_action_on_support(s, theta);
      EXPECT_NEAR(theta.dot(x), g.value_on_support(s, theta), 1e-10) << g.describe();
      EXPECT_TRUE(g.contains(x)) << g.describe();
      for (int i = 0; i < 6; ++i) {
        if (!s.contains(i)) {
          EXPECT_EQ(x(i), 0.0) << g.describe();
        }
      }
    }
  }
}

TEST(GeometryPropertyTest, SampledFeasiblePointsWithinRadius) {
  Rng rng(13);
  for (const ActionSet& g : sample_geometries(5, rng)) {
    for (int n = 0; n < 2000; ++n) {
      const VectorXd dir = random_vector(5, rng);
      const VectorXd x = g.max_scale(dir) * dir;
      EXPECT_TRUE(g.contains(x)) << g.describe();
      EXPECT_LE(x.norm(), g.radius() + 1e-9) << g.describe();
    }
  }
}

TEST(GeometryPropertyTest, BallActionStability) {
  Rng rng(14);
  const ActionSet ball = ActionSet::euclidean_ball(6, 1.3);
  int checked = 0;
  for (int n = 0; n < 2000; ++n) {
    const VectorXd a = random_vector(6, rng);
    const VectorXd b = random_vector(6, rng);
    const SupportSet s = random_support(6, 6, rng);
    VectorXd bs = VectorXd::Zero(6);
    for (const int i : s.indices()) bs(i) = b(i);
    if (bs.norm() < 0.1) continue;
    ++checked;
    const double lhs =
        (ball.best_action_on_support(s, a) - ball.best_action_on_support(s, b)).norm();
    EXPECT_LE(lhs, 2.0 * ball.radius() * (a - b).norm() / bs.norm() + 1e-12);
  }
  EXPECT_GT(checked, 1000);
}

TEST(GeometryPropertyTest, EllipsoidReducesToBall) {
  Rng rng(15);
  const double r = 1.7;
  const ActionSet ball = ActionSet::euclidean_ball(7, r);
  const ActionSet ell = ActionSet::ellipsoid(MatrixXd::Identity(7, 7) / (r * r));
  for (int n = 0; n < 200; ++n) {
    const VectorXd theta = random_vector(7, rng);
    const SupportSet s = random_support(7, 7, rng);
    EXPECT_NEAR(ell.value_on_support(s, theta), ball.value_on_support(s, theta), 1e-10);
    EXPECT_LT((ell.best_action_on_support(s, theta) - ball.best_action_on_support(s, theta))
                  .norm(),
              1e-10);
  }
}

}  // namespace
}  // namespace sparse_bandit
