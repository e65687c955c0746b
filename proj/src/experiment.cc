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

#include "sparse_bandit/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "sparse_bandit/estimation.h"

namespace sparse_bandit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

VectorXd load_vector_file(const std::string& path, int d) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open theta file: " + path);
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    std::size_t pos = 0;
    while (pos < token.size()) {
      const std::size_t comma = token.find(',', pos);
      const std::string item = token.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
      if (!item.empty()) values.push_back(std::stod(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (static_cast<int>(values.size()) != d) {
    throw std::runtime_error("theta file must hold exactly d values: " + path);
  }
  return Eigen::Map<VectorXd>(values.data(), d);
}

double alpha_for(const ExperimentConfig& cfg, const ActionSet& geometry, const VectorXd& theta) {
  switch (cfg.alpha_source) {
    case AlphaSource::kOne:
      return 1.0;
    case AlphaSource::kValue:
      return cfg.alpha_value;
    case AlphaSource::kExhaustive:
      return submodularity_ratio(geometry, theta, RatioMode::kExhaustive).alpha;
    case AlphaSource::kAuto:
      if (cfg.d <= kExhaustiveRatioMaxDimension) {
        return submodularity_ratio(geometry, theta, RatioMode::kExhaustive).alpha;
      }
      return cfg.alpha_value;
  }
  return 1.0;
}

double overlap_fraction(const SupportSet& estimate, const SupportSet& truth, int h) {
  return static_cast<double>(estimate.overlap(truth)) / h;
}

}  // namespace

VectorXd make_gap_controlled_theta(int d, int h, double gap, GapStyle style,
                                   std::uint64_t seed, double max_magnitude) {
  if (!(gap > 0.0)) throw std::invalid_argument("target gap must be positive");
  if (h < 1 || h >= d) throw std::invalid_argument("gap-controlled theta needs 1 <= H < d");
  const double rank_h = 1.5 * gap;
  const double rank_next = 0.5 * gap;
  const double spacing = style == GapStyle::kStandard ? 2.0 * gap : std::min(1e-7, 0.5e-6 / h);
  const double top = rank_h + (h - 1) * spacing;
  if (top > max_magnitude) {
    throw std::invalid_argument("gap-controlled theta exceeds the magnitude budget");
  }

  Rng rng(seed);
  std::vector<double> magnitudes;
  magnitudes.reserve(d);
  for (int j = h - 1; j >= 0; --j) magnitudes.push_back(rank_h + j * spacing);
  magnitudes.push_back(rank_next);
  for (int i = h + 1; i < d; ++i) magnitudes.push_back(rng.uniform(0.0, rank_next));

  std::vector<int> position(d);
  std::iota(position.begin(), position.end(), 0);
  for (int i = d - 1; i > 0; --i) {
    std::swap(position[i], position[rng.index(static_cast<std::uint64_t>(i) + 1)]);
  }
  VectorXd theta(d);
  for (int i = 0; i < d; ++i) {
    theta(position[i]) = rng.coin() ? magnitudes[i] : -magnitudes[i];
  }
  return theta;
}

ActionSet make_geometry(const ExperimentConfig& cfg, std::uint64_t seed) {
  switch (cfg.geometry) {
    case GeometryKind::kEuclideanBall:
      return ActionSet::euclidean_ball(cfg.d, cfg.radius);
    case GeometryKind::kEllipsoid: {
      if (!cfg.matrix_file.empty()) {
        const MatrixXd a = load_matrix_csv(cfg.matrix_file);
        if (a.rows() != cfg.d || a.cols() != cfg.d) {
          throw std::runtime_error("ellipsoid matrix file is not d x d");
        }
        ActionSet set = ActionSet::ellipsoid(a);
        if (set.lambda_max() > 1.0 + 1e-10) {
          throw std::runtime_error("ellipsoid matrix file has lambda_max > 1");
        }
        return set;
      }
      Rng rng(seed);
      return ActionSet::ellipsoid(random_spd_matrix(cfg.d, cfg.eigen_min, cfg.eigen_max, rng));
    }
    case GeometryKind::kLpBall:
      return ActionSet::lp_ball(cfg.d, cfg.p, cfg.radius);
    case GeometryKind::kL1Ball:
      return ActionSet::l1_ball(cfg.d, cfg.radius);
    case GeometryKind::kHypercube:
      return ActionSet::hypercube(VectorXd::Constant(cfg.d, cfg.lower),
                                  VectorXd::Constant(cfg.d, cfg.upper));
  }
  throw std::invalid_argument("unsupported geometry");
}

SparseSolution benchmark_optimum(const ActionSet& geometry, const VectorXd& theta, int h) {
  try {
    return brute_force(geometry, theta, h);
  } catch (const std::length_error&) {
    switch (geometry.kind()) {
      case GeometryKind::kEuclideanBall:
        return exact_top_h(geometry, theta, h);
      case GeometryKind::kHypercube:
      case GeometryKind::kL1Ball: {
        // Modular and max-type objectives: greedy is exact.
        const GreedyTrace greedy = greedy_select(geometry, theta, h);
        return {greedy.support, geometry.best_action_on_support(greedy.support, theta),
                greedy.value};
      }
      default:
        throw;
    }
  }
}

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPARSE_BANDIT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // Fall through to the hardware default.
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

TrialInstance make_trial_instance(const ExperimentConfig& cfg, int trial) {
  Rng seeds(cfg.seed + static_cast<std::uint64_t>(trial));
  const std::uint64_t geometry_seed = seeds.bits();
  const std::uint64_t theta_seed = seeds.bits();
  const std::uint64_t basis_seed = seeds.bits();
  const std::uint64_t noise_seed = seeds.bits();

  VectorXd theta;
  switch (cfg.theta_source) {
    case ThetaSource::kUniform: {
      Rng rng(theta_seed);
      theta.resize(cfg.d);
      for (int i = 0; i < cfg.d; ++i) theta(i) = rng.uniform(-1.0, 1.0);
      break;
    }
    case ThetaSource::kFile:
      theta = load_vector_file(cfg.theta_file, cfg.d);
      break;
    case ThetaSource::kGapControlled:
      theta = make_gap_controlled_theta(cfg.d, cfg.h, cfg.theta_gap, cfg.theta_style,
                                        theta_seed, cfg.theta_max_magnitude);
      break;
  }
  return {make_geometry(cfg, geometry_seed), std::move(theta), basis_seed, noise_seed};
}

TrialResult run_trial(const ExperimentConfig& cfg, int trial, bool record_steps) {
  TrialResult result;
  result.trial = trial;
  result.seed = cfg.seed + static_cast<std::uint64_t>(trial);
  const TrialInstance instance = make_trial_instance(cfg, trial);
  const ActionSet& geometry = instance.geometry;
  const std::uint64_t basis_seed = instance.basis_seed;
  const std::uint64_t noise_seed = instance.noise_seed;
  const int d = cfg.d;
  const int h = cfg.h;
  result.theta_star = instance.theta_star;
  const VectorXd& theta = result.theta_star;

  const SparseSolution optimum = benchmark_optimum(geometry, theta, h);
  result.optimal_support = optimum.support;
  // theta^T x*(S*) rather than the closed form, so the benchmark and the
  // played rewards share one evaluation path.
  result.opt_value = theta.dot(optimum.action);
  result.alpha = alpha_for(cfg, geometry, theta);

  if (cfg.oracle_policy || cfg.mode == AlgorithmMode::kApsee) {
    if (h < d) {
      SortGap sorted = empirical_sort_gap(theta, h);
      result.signal_gap = sorted.gap;
      result.reference_support = std::move(sorted.support);
    } else {
      result.signal_gap = kInf;
      result.reference_support = SupportSet::full(d);
    }
  } else {
    const GreedyTrace greedy = greedy_select(geometry, theta, h);
    result.signal_gap = greedy.min_gap;
    result.reference_support = greedy.support;
  }

  ExplorationBasis basis =
      make_basis(cfg.basis, geometry, h, cfg.sigma * cfg.sigma_scale, basis_seed);
  result.h1 = 2.0 * cfg.sigma * cfg.sigma * basis.trace / (basis.lambda0 * basis.lambda0);
  if (result.h1 == 0.0 || result.signal_gap == kInf) {
    result.c0 = 0.0;
  } else if (result.signal_gap > 0.0) {
    result.c0 = warmup_bound_c0(result.h1, result.signal_gap, d, cfg.delta);
  } else {
    result.c0 = kInf;
  }

  const std::int64_t horizon = cfg.horizon;
  const std::size_t steps = record_steps ? static_cast<std::size_t>(horizon) : 0;
  result.cycle.reserve(steps);
  result.phase.reserve(steps);
  result.inst_regret.reserve(steps);
  result.cum_regret.reserve(steps);
  result.inst_alpha_regret.reserve(steps);
  result.cum_alpha_regret.reserve(steps);
  result.overlap.reserve(steps);
  result.min_inst_regret = kInf;

  double cum = 0.0;
  double cum_alpha = 0.0;
  std::size_t next_checkpoint = 0;
  auto account = [&](std::int64_t t, int cycle, Phase phase, double expected, double overlap) {
    const double inst = result.opt_value - expected;
    const double inst_alpha = result.alpha * result.opt_value - expected;
    cum += inst;
    cum_alpha += inst_alpha;
    result.min_inst_regret = std::min(result.min_inst_regret, inst);
    if (record_steps) {
      result.cycle.push_back(cycle);
      result.phase.push_back(phase);
      result.inst_regret.push_back(inst);
      result.cum_regret.push_back(cum);
      result.inst_alpha_regret.push_back(inst_alpha);
      result.cum_alpha_regret.push_back(cum_alpha);
      result.overlap.push_back(overlap);
    }
    while (next_checkpoint < cfg.checkpoints.size() && cfg.checkpoints[next_checkpoint] == t) {
      result.checkpoint_regret.push_back(cum);
      result.checkpoint_alpha_regret.push_back(cum_alpha);
      ++next_checkpoint;
    }
  };

  if (cfg.oracle_policy) {
    const double expected = theta.dot(optimum.action);
    for (std::int64_t t = 1; t <= horizon; ++t) account(t, 0, Phase::kExploit, expected, 1.0);
  } else {
    Agent agent(geometry, basis, AgentConfig{cfg.mode, h, cfg.delta});
    Environment env(theta, cfg.sigma, noise_seed);
    const RunTrace trace = run_horizon(env, agent, horizon);

    std::vector<double> cycle_overlap;
    cycle_overlap.reserve(trace.cycles.size());
    for (const CycleRecord& record : trace.cycles) {
      CycleSummary summary;
      summary.cycle = record.cycle;
      summary.eps = record.eps;
      summary.gap = record.gap;
      summary.locked = record.locked;
      summary.ols_error = (record.theta_hat - theta).norm();
      summary.overlap = overlap_fraction(record.estimate, result.optimal_support, h);
      cycle_overlap.push_back(summary.overlap);
      result.cycles.push_back(summary);
    }
    for (std::int64_t t = 1; t <= horizon; ++t) {
      const StepRecord& step = trace.steps[t - 1];
      // Latest finished estimate: the previous cycle while exploring, the
      // current one while exploiting.
      const int latest = step.phase == Phase::kExplore ? step.cycle - 1 : step.cycle;
      const double overlap = latest >= 1 ? cycle_overlap[latest - 1] : 0.0;
      account(t, step.cycle, step.phase, step.expected_reward, overlap);
    }

    result.lock_cycle = trace.lock_cycle;
    if (trace.lock_cycle > 0) {
      result.locked_support = agent.estimated_support();
      result.locked_matches_reference = result.locked_support == result.reference_support;
    }
    result.cycles_completed = static_cast<int>(trace.cycles.size());
    int recovery = 0;
    for (auto it = trace.cycles.rbegin(); it != trace.cycles.rend(); ++it) {
      if (!(it->estimate == result.optimal_support)) break;
      recovery = it->cycle;
    }
    result.recovery_cycle = recovery;
  }
  result.final_regret = cum;
  result.final_alpha_regret = cum_alpha;
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  validate(cfg);
  ExperimentResult result;
  result.config = cfg;
  result.trials.resize(cfg.trials);
  std::vector<std::exception_ptr> errors(cfg.trials);

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < cfg.trials; i = next++) {
      try {
        result.trials[i] = run_trial(cfg, i, options.record_steps);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::min(worker_count(options.threads), cfg.trials);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  // Deterministic reduce in trial order.
  const auto& trials = result.trials;
  const double n = static_cast<double>(trials.size());
  if (options.record_steps) {
    const std::size_t horizon = static_cast<std::size_t>(cfg.horizon);
    result.mean_regret.assign(horizon, 0.0);
    result.std_regret.assign(horizon, 0.0);
    result.mean_alpha_regret.assign(horizon, 0.0);
    result.std_alpha_regret.assign(horizon, 0.0);
    result.mean_overlap.assign(horizon, 0.0);
    std::vector<double> column(trials.size());
    std::vector<double> alpha_column(trials.size());
    for (std::size_t t = 0; t < horizon; ++t) {
      double overlap = 0.0;
      for (std::size_t i = 0; i < trials.size(); ++i) {
        column[i] = trials[i].cum_regret[t];
        alpha_column[i] = trials[i].cum_alpha_regret[t];
        overlap += trials[i].overlap[t];
      }
      const MeanStd r = mean_std(column);
      const MeanStd a = mean_std(alpha_column);
      result.mean_regret[t] = r.mean;
      result.std_regret[t] = r.std;
      result.mean_alpha_regret[t] = a.mean;
      result.std_alpha_regret[t] = a.std;
      result.mean_overlap[t] = overlap / n;
    }
  }

  std::vector<double> finals;
  std::vector<double> alpha_finals;
  std::vector<double> alphas;
  std::vector<double> lock_cycles;
  std::vector<double> c0s;
  int correct = 0;
  for (const TrialResult& trial : trials) {
    finals.push_back(trial.final_regret);
    alpha_finals.push_back(trial.final_alpha_regret);
    alphas.push_back(trial.alpha);
    c0s.push_back(trial.c0);
    if (trial.lock_cycle > 0) {
      lock_cycles.push_back(trial.lock_cycle);
      correct += trial.locked_matches_reference ? 1 : 0;
    }
  }
  result.final_regret = mean_std(finals);
  result.final_alpha_regret = mean_std(alpha_finals);
  result.mean_alpha = mean_std(alphas).mean;
  result.mean_c0 = mean_std(c0s).mean;
  result.lock_rate = static_cast<double>(lock_cycles.size()) / n;
  result.mean_lock_cycle = lock_cycles.empty() ? kNaN : mean_std(lock_cycles).mean;
  result.locked_correct_rate =
      lock_cycles.empty() ? kNaN : static_cast<double>(correct) / lock_cycles.size();

  for (std::size_t k = 0; k < cfg.checkpoints.size(); ++k) {
    std::vector<double> r;
    std::vector<double> a;
    for (const TrialResult& trial : trials) {
      r.push_back(trial.checkpoint_regret[k]);
      a.push_back(trial.checkpoint_alpha_regret[k]);
    }
    result.checkpoint_regret.push_back(mean_std(r));
    result.checkpoint_alpha_regret.push_back(mean_std(a));
  }
  return result;
}

}  // namespace sparse_bandit
