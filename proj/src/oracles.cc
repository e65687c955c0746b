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

#include "sparse_bandit/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sparse_bandit/rng.h"

namespace sparse_bandit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_cardinality(const ActionSet& geometry, const VectorXd& theta, int h) {
  if (theta.size() != geometry.dimension()) {
    throw std::invalid_argument("theta dimension does not match the action set");
  }
  if (h < 1 || h > geometry.dimension()) {
    throw std::invalid_argument("sparsity H must lie in [1, d]");
  }
}

// C(n, k), saturating at `cap + 1` so that callers can compare against a budget.
std::int64_t binomial_capped(int n, int k, std::int64_t cap) {
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const __int128 next = static_cast<__int128>(result) * (n - k + i) / i;
    if (next > cap) return cap + 1;
    result = static_cast<std::int64_t>(next);
  }
  return result;
}

SupportSet support_from_mask(std::uint64_t mask, int dimension) {
  std::vector<int> indices;
  for (int i = 0; i < dimension; ++i) {
    if (mask >> i & 1U) indices.push_back(i);
  }
  return SupportSet(dimension, dimension, std::move(indices));
}

// Ratio of one (S, Omega) pair from precomputed values; 0/0 := 1, clamped.
double pair_ratio(double numerator, double h_s, double h_union) {
  const double denominator = h_union - h_s;
  const double tolerance = 1e-12 * std::max(1.0, std::abs(h_union));
  if (denominator <= tolerance) return 1.0;
  return std::clamp(numerator / denominator, 0.0, 1.0);
}

}  // namespace

SparseSolution exact_top_h(const ActionSet& geometry, const VectorXd& theta, int h) {
  if (geometry.kind() != GeometryKind::kEuclideanBall) {
    throw std::invalid_argument("exact_top_h requires a Euclidean ball action set");
  }
  check_cardinality(geometry, theta, h);
  std::vector<int> order(geometry.dimension());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(theta(a)) > std::abs(theta(b));
  });
  order.resize(h);
  SparseSolution solution;
  solution.support = SupportSet(geometry.dimension(), h, std::move(order));
  solution.action = geometry.best_action_on_support(solution.support, theta);
  solution.value = geometry.value_on_support(solution.support, theta);
  return solution;
}

GreedyTrace greedy_select(const ActionSet& geometry, const VectorXd& theta, int h) {
  check_cardinality(geometry, theta, h);
  const int d = geometry.dimension();
  GreedyTrace trace;
  trace.min_gap = kInf;
  SupportSet current(d, h);
  double current_value = 0.0;

  for (int step = 0; step < h; ++step) {
    int best = -1;
    double best_gain = -kInf;
    double best_value = 0.0;
    double second_gain = -kInf;
    for (int v = 0; v < d; ++v) {
      if (current.contains(v)) continue;
      const double value = geometry.value_on_support(current.with(v), theta);
      const double gain = value - current_value;
      if (gain > best_gain) {
        second_gain = best_gain;
        best_gain = gain;
        best = v;
        best_value = value;
      } else if (gain > second_gain) {
        second_gain = gain;
      }
    }
    const double gap = second_gain == -kInf ? kInf : best_gain - second_gain;
    trace.selected.push_back(best);
    trace.marginal_gains.push_back(best_gain);
    trace.step_gaps.push_back(gap);
    trace.min_gap = std::min(trace.min_gap, gap);
    current = current.with(best);
    current_value = best_value;
  }
  trace.support = current;
  trace.value = current_value;
  return trace;
}

SparseSolution brute_force(const ActionSet& geometry, const VectorXd& theta, int h) {
  check_cardinality(geometry, theta, h);
  const int d = geometry.dimension();
  if (binomial_capped(d, h, kBruteForceBudget) > kBruteForceBudget) {
    throw std::length_error("brute_force: C(d, H) exceeds the enumeration budget");
  }
  std::vector<int> combo(h);
  std::iota(combo.begin(), combo.end(), 0);
  SparseSolution best;
  best.value = -kInf;
  while (true) {
    SupportSet candidate(d, h, combo);
    const double value = geometry.value_on_support(candidate, theta);
    if (value > best.value) {
      best.value = value;
      best.support = std::move(candidate);
    }
    // Advance to the next combination in lexicographic order.
    int i = h - 1;
    while (i >= 0 && combo[i] == d - h + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < h; ++j) combo[j] = combo[j - 1] + 1;
  }
  best.action = geometry.best_action_on_support(best.support, theta);
  return best;
}

double approximation_factor(double gamma) { return 1.0 - std::exp(-gamma); }

RatioCertificate submodularity_ratio(const ActionSet& geometry, const VectorXd& theta,
                                     RatioMode mode, std::int64_t sample_pairs,
                                     std::uint64_t seed) {
  const int d = geometry.dimension();
  if (theta.size() != d) {
    throw std::invalid_argument("theta dimension does not match the action set");
  }
  RatioCertificate cert;
  cert.gamma = 1.0;

  if (mode == RatioMode::kExhaustive) {
    if (d > kExhaustiveRatioMaxDimension) {
      throw std::length_error("exhaustive submodularity ratio needs d <= 10");
    }
    const std::uint64_t subsets = std::uint64_t{1} << d;
    std::vector<double> values(subsets);
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      values[mask] = geometry.value_on_support(support_from_mask(mask, d), theta);
    }
    // Only Omega \ S matters, so iterate S and the non-empty subsets R of its
    // complement: 3^d pairs instead of 4^d.
    for (std::uint64_t s = 0; s < subsets; ++s) {
      const std::uint64_t complement = (subsets - 1) & ~s;
      for (std::uint64_t r = complement; r != 0; r = (r - 1) & complement) {
        double numerator = 0.0;
        for (int w = 0; w < d; ++w) {
          if (r >> w & 1U) numerator += values[s | (std::uint64_t{1} << w)] - values[s];
        }
        cert.gamma = std::min(cert.gamma, pair_ratio(numerator, values[s], values[s | r]));
        ++cert.instance_count;
      }
    }
    cert.exhaustive = true;
  } else {
    if (d > 64) throw std::length_error("sampled submodularity ratio needs d <= 64");
    if (sample_pairs < 1) throw std::invalid_argument("sampled mode needs a positive pair budget");
    Rng rng(seed);
    for (std::int64_t n = 0; n < sample_pairs; ++n) {
      std::uint64_t s = 0;
      std::uint64_t omega = 0;
      for (int i = 0; i < d; ++i) {
        if (rng.coin()) s |= std::uint64_t{1} << i;
        if (rng.coin()) omega |= std::uint64_t{1} << i;
      }
      const std::uint64_t r = omega & ~s;
      ++cert.instance_count;
      if (r == 0) continue;
      const double h_s = geometry.value_on_support(support_from_mask(s, d), theta);
      const double h_union = geometry.value_on_support(support_from_mask(s | r, d), theta);
      double numerator = 0.0;
      for (int w = 0; w < d; ++w) {
        if (r >> w & 1U) {
          numerator += geometry.value_on_support(
                           support_from_mask(s | (std::uint64_t{1} << w), d), theta) -
                       h_s;
        }
      }
      cert.gamma = std::min(cert.gamma, pair_ratio(numerator, h_s, h_union));
    }
    cert.exhaustive = false;
  }
  cert.alpha = approximation_factor(cert.gamma);
  return cert;
}

double hull_regularity_rate(const ActionSet& geometry, const VectorXd& theta, int h,
                            int samples, std::uint64_t seed) {
  check_cardinality(geometry, theta, h);
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  const int d = geometry.dimension();
  Rng rng(seed);
  auto random_support = [&] {
    std::vector<int> all(d);
    std::iota(all.begin(), all.end(), 0);
    const int size = 1 + static_cast<int>(rng.index(h));
    for (int i = 0; i < size; ++i) {
      std::swap(all[i], all[i + rng.index(d - i)]);
    }
    all.resize(size);
    return SupportSet(d, h, std::move(all));
  };
  int inside = 0;
  for (int n = 0; n < samples; ++n) {
    const VectorXd a = geometry.best_action_on_support(random_support(), theta);
    const VectorXd b = geometry.best_action_on_support(random_support(), theta);
    const double w = rng.uniform();
    inside += geometry.contains(w * a + (1.0 - w) * b) ? 1 : 0;
  }
  return static_cast<double>(inside) / samples;
}

}  // namespace sparse_bandit
