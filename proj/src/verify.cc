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

#include "sparse_bandit/verify.h"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "sparse_bandit/algorithms.h"
#include "sparse_bandit/estimation.h"
#include "sparse_bandit/geometry.h"
#include "sparse_bandit/oracles.h"
#include "sparse_bandit/rng.h"

namespace sparse_bandit {
namespace {

VectorXd random_vector(int d, Rng& rng) {
  VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.uniform(-1.0, 1.0);
  return v;
}

SupportSet random_support(int d, int max_size, Rng& rng) {
  std::vector<int> all(d);
  std::iota(all.begin(), all.end(), 0);
  const int size = static_cast<int>(rng.index(max_size + 1));
  for (int i = 0; i < size; ++i) std::swap(all[i], all[i + rng.index(d - i)]);
  all.resize(size);
  return SupportSet(d, d, std::move(all));
}

std::vector<ActionSet> all_geometries(int d, Rng& rng) {
  return {ActionSet::euclidean_ball(d, 1.5),
          ActionSet::ellipsoid(random_spd_matrix(d, 0.2, 1.0, rng)),
          ActionSet::lp_ball(d, 1.5, 1.0),
          ActionSet::l1_ball(d, 2.0),
          ActionSet::hypercube(VectorXd::Constant(d, -0.5), VectorXd::Constant(d, 1.0))};
}

// Runs `body`, which returns an empty string on success or a failure detail.
CheckResult check(std::string name, const std::function<std::string()>& body) {
  CheckResult result;
  result.name = std::move(name);
  try {
    result.detail = body();
    result.passed = result.detail.empty();
  } catch (const std::exception& e) {
    result.detail = std::string("exception: ") + e.what();
  }
  return result;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
  std::vector<CheckResult> results;
  constexpr int d = 6;

  results.push_back(check("value_lipschitz", [&] {
    Rng rng(seed);
    for (const ActionSet& g : all_geometries(d, rng)) {
      for (int n = 0; n < 1000; ++n) {
        const VectorXd a = random_vector(d, rng);
        const VectorXd b = random_vector(d, rng);
        const SupportSet s = random_support(d, d, rng);
        const double diff = std::abs(g.value_on_support(s, a) - g.value_on_support(s, b));
        if (diff > g.radius() * (a - b).norm() + 1e-9) return g.describe();
      }
    }
    return std::string();
  }));

  results.push_back(check("value_monotone", [&] {
    Rng rng(seed + 1);
    for (const ActionSet& g : all_geometries(d, rng)) {
      for (int n = 0; n < 500; ++n) {
        const VectorXd theta = random_vector(d, rng);
        const SupportSet big = random_support(d, d, rng);
        std::vector<int> sub;
        for (const int i : big.indices()) {
          if (rng.coin()) sub.push_back(i);
        }
        const SupportSet small(d, d, sub);
        if (g.value_on_support(small, theta) > g.value_on_support(big, theta) + 1e-12) {
          return g.describe();
        }
      }
    }
    return std::string();
  }));

  results.push_back(check("optimality_certificate", [&] {
    Rng rng(seed + 2);
    for (const ActionSet& g : all_geometries(d, rng)) {
      for (int n = 0; n < 500; ++n) {
        const VectorXd theta = random_vector(d, rng);
        const SupportSet s = random_support(d, d, rng);
        const VectorXd x = g.best_action_on_support(s, theta);
        if (std::abs(theta.dot(x) - g.value_on_support(s, theta)) > 1e-10) return g.describe();
        if (!g.contains(x)) return g.describe() + " infeasible";
        for (int i = 0; i < d; ++i) {
          if (x(i) != 0.0 && !s.contains(i)) return g.describe() + " off support";
        }
      }
    }
    return std::string();
  }));

  results.push_back(check("ball_action_stability", [&] {
    Rng rng(seed + 3);
    const ActionSet ball = ActionSet::euclidean_ball(d, 1.5);
    for (int n = 0; n < 1000; ++n) {
      const VectorXd a = random_vector(d, rng);
      const VectorXd b = random_vector(d, rng);
      const SupportSet s = random_support(d, d, rng);
      VectorXd bs = VectorXd::Zero(d);
      for (const int i : s.indices()) bs(i) = b(i);
      if (bs.norm() < 0.1) continue;
      const double lhs =
          (ball.best_action_on_support(s, a) - ball.best_action_on_support(s, b)).norm();
      if (lhs > 2.0 * ball.radius() * (a - b).norm() / bs.norm() + 1e-12) {
        return std::string("violated");
      }
    }
    return std::string();
  }));

  results.push_back(check("ellipsoid_reduces_to_ball", [&] {
    Rng rng(seed + 4);
    const double r = 1.7;
    const ActionSet ball = ActionSet::euclidean_ball(d, r);
    const ActionSet ell = ActionSet::ellipsoid(MatrixXd::Identity(d, d) / (r * r));
    for (int n = 0; n < 200; ++n) {
      const VectorXd theta = random_vector(d, rng);
      const SupportSet s = random_support(d, d, rng);
      if (std::abs(ball.value_on_support(s, theta) - ell.value_on_support(s, theta)) > 1e-10) {
        return std::string("mismatch");
      }
    }
    return std::string();
  }));

  results.push_back(check("top_h_matches_brute_force", [&] {
    Rng rng(seed + 5);
    const ActionSet ball = ActionSet::euclidean_ball(8, 1.0);
    for (int n = 0; n < 100; ++n) {
      const VectorXd theta = random_vector(8, rng);
      if (std::abs(exact_top_h(ball, theta, 3).value - brute_force(ball, theta, 3).value) >
          1e-12) {
        return std::string("mismatch");
      }
    }
    return std::string();
  }));

  results.push_back(check("greedy_guarantee", [&] {
    Rng rng(seed + 6);
    for (int n = 0; n < 50; ++n) {
      const ActionSet ell = ActionSet::ellipsoid(random_spd_matrix(d, 0.1, 1.0, rng));
      const VectorXd theta = random_vector(d, rng);
      const double opt = brute_force(ell, theta, 3).value;
      const double greedy = greedy_select(ell, theta, 3).value;
      const RatioCertificate cert = submodularity_ratio(ell, theta, RatioMode::kExhaustive);
      if (cert.gamma < ell.lambda_min() - 1e-9) return std::string("gamma below lambda_min");
      if (greedy < cert.alpha * opt - 1e-9) return std::string("greedy below alpha * OPT");
    }
    return std::string();
  }));

  results.push_back(check("hypercube_greedy_exact", [&] {
    Rng rng(seed + 7);
    for (int n = 0; n < 100; ++n) {
      const ActionSet cube = ActionSet::hypercube(VectorXd::Zero(8), VectorXd::Ones(8));
      const VectorXd theta = random_vector(8, rng);
      if (std::abs(greedy_select(cube, theta, 3).value - brute_force(cube, theta, 3).value) >
          1e-12) {
        return std::string("mismatch");
      }
    }
    return std::string();
  }));

  results.push_back(check("greedy_deterministic", [&] {
    Rng rng(seed + 8);
    for (const ActionSet& g : all_geometries(d, rng)) {
      const VectorXd theta = random_vector(d, rng);
      if (!(greedy_select(g, theta, 3) == greedy_select(g, theta, 3))) return g.describe();
    }
    return std::string();
  }));

  results.push_back(check("ols_zero_noise_recovery", [&] {
    Rng rng(seed + 9);
    for (const BasisKind kind : {BasisKind::kStandard, BasisKind::kGaussianOrthogonal,
                                 BasisKind::kUniformOrthogonal}) {
      const ActionSet ell = ActionSet::ellipsoid(random_spd_matrix(d, 0.2, 1.0, rng));
      const ExplorationBasis basis = make_basis(kind, ell, 3, 0.0, seed);
      const VectorXd theta = random_vector(d, rng);
      OlsState ols(d);
      for (int c = 0; c < 3; ++c) ols = ols_update(ols, basis, basis.actions.transpose() * theta);
      if ((ols.theta_hat - theta).norm() > 1e-10) return std::string(to_string(kind));
    }
    return std::string();
  }));

  results.push_back(check("subgaussian_sum_bound", [&] {
    Rng rng(seed + 10);
    const int n = 1000;
    const double sigma = 0.5;
    const double delta = 0.1;
    const double bound = std::sqrt(2.0 * n * sigma * sigma * std::log(2.0 / delta));
    int held = 0;
    for (int rep = 0; rep < 500; ++rep) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += sigma * rng.normal();
      held += std::abs(sum) <= bound ? 1 : 0;
    }
    if (held < 450) return "held in " + std::to_string(held) + "/500";
    return std::string();
  }));

  results.push_back(check("schedule_and_feasibility", [&] {
    Rng rng(seed + 11);
    for (const AlgorithmMode mode :
         {AlgorithmMode::kApsee, AlgorithmMode::kApseeG, AlgorithmMode::kApseeGCompact}) {
      const ActionSet ball = ActionSet::euclidean_ball(d, 1.0);
      const VectorXd theta = random_vector(d, rng);
      Agent agent(ball, make_basis(BasisKind::kStandard, ball, 2, 0.1, 0), {mode, 2, 0.1});
      Environment env(theta, 0.1, seed);
      const RunTrace trace = run_horizon(env, agent, 3000);
      // Every finished cycle spans exactly d + m_c steps.
      std::vector<std::int64_t> per_cycle(trace.steps.back().cycle + 1, 0);
      for (const StepRecord& step : trace.steps) ++per_cycle[step.cycle];
      for (const CycleRecord& c : trace.cycles) {
        if (c.cycle == trace.steps.back().cycle) continue;
        if (per_cycle[c.cycle] != d + c.exploit_length) return std::string(to_string(mode));
      }
      for (std::int64_t t = 1; t <= 3000; t += 7) {
        const VectorXd x = trace.action_at(t, agent.basis());
        if (!ball.contains(x) || trace.support_at(t, agent.basis()).size() > 2) {
          return std::string(to_string(mode)) + " infeasible";
        }
      }
    }
    return std::string();
  }));

  results.push_back(check("hull_regularity_spot_check", [&] {
    Rng rng(seed + 12);
    const ActionSet cube = ActionSet::hypercube(VectorXd::Zero(d), VectorXd::Ones(d));
    const ActionSet l1 = ActionSet::l1_ball(d, 1.0);
    const VectorXd theta = random_vector(d, rng);
    const double a = hull_regularity_rate(cube, theta, 3, 500, seed);
    const double b = hull_regularity_rate(l1, theta, 3, 500, seed);
    if (a < 1.0 || b < 1.0) {
      std::ostringstream out;
      out << "rates " << a << ", " << b;
      return out.str();
    }
    return std::string();
  }));

  return results;
}

}  // namespace sparse_bandit
