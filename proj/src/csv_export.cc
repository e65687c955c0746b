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

#include "sparse_bandit/csv_export.h"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace sparse_bandit {
namespace {

bool keep_row(std::int64_t t, std::int64_t horizon, int stride) {
  return (t - 1) % stride == 0 || t == horizon;
}

void require_steps(const ExperimentResult& result) {
  for (const TrialResult& trial : result.trials) {
    if (static_cast<std::int64_t>(trial.cum_regret.size()) != result.config.horizon) {
      throw std::runtime_error("per-step records are required for regret/recovery export");
    }
  }
}

double normalized(double value, double t, double power) { return value / std::pow(t, power); }

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buffer;
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buffer.data(), ptr);
}

std::string regret_csv(const ExperimentResult& result) {
  require_steps(result);
  const std::int64_t horizon = result.config.horizon;
  const int stride = result.config.output_stride;
  std::string out =
      "trial,t,cycle,phase,inst_regret,cum_regret,inst_alpha_regret,cum_alpha_regret\n";
  for (const TrialResult& trial : result.trials) {
    for (std::int64_t t = 1; t <= horizon; ++t) {
      if (!keep_row(t, horizon, stride)) continue;
      const std::size_t i = static_cast<std::size_t>(t - 1);
      out += std::to_string(trial.trial) + ',' + std::to_string(t) + ',' +
             std::to_string(trial.cycle[i]) + ',' + std::string(to_string(trial.phase[i])) +
             ',' + format_double(trial.inst_regret[i]) + ',' +
             format_double(trial.cum_regret[i]) + ',' +
             format_double(trial.inst_alpha_regret[i]) + ',' +
             format_double(trial.cum_alpha_regret[i]) + '\n';
    }
  }
  return out;
}

std::string cycles_csv(const ExperimentResult& result) {
  std::string out = "trial,c,eps_c,gap,locked,ols_error\n";
  for (const TrialResult& trial : result.trials) {
    for (const CycleSummary& c : trial.cycles) {
      out += std::to_string(trial.trial) + ',' + std::to_string(c.cycle) + ',' +
             format_double(c.eps) + ',' + format_double(c.gap) + ',' +
             (c.locked ? "1" : "0") + ',' + format_double(c.ols_error) + '\n';
    }
  }
  return out;
}

std::string recovery_csv(const ExperimentResult& result) {
  require_steps(result);
  const std::int64_t horizon = result.config.horizon;
  const int stride = result.config.output_stride;
  std::string out = "trial,t,overlap_fraction\n";
  for (const TrialResult& trial : result.trials) {
    for (std::int64_t t = 1; t <= horizon; ++t) {
      if (!keep_row(t, horizon, stride)) continue;
      out += std::to_string(trial.trial) + ',' + std::to_string(t) + ',' +
             format_double(trial.overlap[static_cast<std::size_t>(t - 1)]) + '\n';
    }
  }
  return out;
}

std::string summary_csv(const ExperimentResult& result) {
  const ExperimentConfig& cfg = result.config;
  const double t = static_cast<double>(cfg.horizon);
  const std::string algorithm =
      cfg.oracle_policy ? "oracle" : std::string(to_string(cfg.mode));
  std::string out =
      "experiment,algorithm,geometry,basis,d,H,sigma,delta,horizon,trials,alpha_mean,"
      "mean_regret,std_regret,mean_alpha_regret,std_alpha_regret,"
      "mean_regret_over_sqrt_t,mean_regret_over_t23,mean_regret_over_t,"
      "mean_alpha_regret_over_sqrt_t,mean_alpha_regret_over_t,"
      "lock_rate,mean_lock_cycle,locked_correct_rate,theoretical_c0\n";
  out += cfg.name + ',' + algorithm + ',' + std::string(to_string(cfg.geometry)) + ',' +
         std::string(to_string(cfg.basis)) + ',' + std::to_string(cfg.d) + ',' +
         std::to_string(cfg.h) + ',' + format_double(cfg.sigma) + ',' +
         format_double(cfg.delta) + ',' + std::to_string(cfg.horizon) + ',' +
         std::to_string(cfg.trials) + ',' + format_double(result.mean_alpha) + ',' +
         format_double(result.final_regret.mean) + ',' +
         format_double(result.final_regret.std) + ',' +
         format_double(result.final_alpha_regret.mean) + ',' +
         format_double(result.final_alpha_regret.std) + ',' +
         format_double(normalized(result.final_regret.mean, t, 0.5)) + ',' +
         format_double(normalized(result.final_regret.mean, t, 2.0 / 3.0)) + ',' +
         format_double(normalized(result.final_regret.mean, t, 1.0)) + ',' +
         format_double(normalized(result.final_alpha_regret.mean, t, 0.5)) + ',' +
         format_double(normalized(result.final_alpha_regret.mean, t, 1.0)) + ',' +
         format_double(result.lock_rate) + ',' + format_double(result.mean_lock_cycle) + ',' +
         format_double(result.locked_correct_rate) + ',' + format_double(result.mean_c0) + '\n';
  return out;
}

std::string checkpoints_csv(const ExperimentResult& result) {
  std::string out =
      "t,mean_regret,std_regret,mean_alpha_regret,std_alpha_regret,"
      "mean_alpha_regret_over_sqrt_t,mean_regret_over_t23,mean_alpha_regret_over_t\n";
  for (std::size_t k = 0; k < result.checkpoint_regret.size(); ++k) {
    const double t = static_cast<double>(result.config.checkpoints[k]);
    const MeanStd& r = result.checkpoint_regret[k];
    const MeanStd& a = result.checkpoint_alpha_regret[k];
    out += std::to_string(result.config.checkpoints[k]) + ',' + format_double(r.mean) + ',' +
           format_double(r.std) + ',' + format_double(a.mean) + ',' + format_double(a.std) +
           ',' + format_double(normalized(a.mean, t, 0.5)) + ',' +
           format_double(normalized(r.mean, t, 2.0 / 3.0)) + ',' +
           format_double(normalized(a.mean, t, 1.0)) + '\n';
  }
  return out;
}

std::vector<std::string> export_csv(const ExperimentResult& result, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::vector<std::pair<std::string, std::string>> files = {
      {"regret.csv", regret_csv(result)},
      {"cycles.csv", cycles_csv(result)},
      {"recovery.csv", recovery_csv(result)},
      {"summary.csv", summary_csv(result)},
      {"checkpoints.csv", checkpoints_csv(result)},
  };
  std::vector<std::string> paths;
  for (const auto& [name, content] : files) {
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("failed to write " + path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace sparse_bandit
