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

// Command-line front end:
//
//   sparse-bandit run <config> --out <dir>
//   sparse-bandit verify
//   sparse-bandit sweep --param <section.key> --values a,b,c <config> [--out <dir>]
//   sparse-bandit certify-ratio <config> [--trial i]

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "sparse_bandit/config.h"
#include "sparse_bandit/csv_export.h"
#include "sparse_bandit/experiment.h"
#include "sparse_bandit/oracles.h"
#include "sparse_bandit/verify.h"

namespace sb = sparse_bandit;

namespace {

void print_summary(const sb::ExperimentResult& result) {
  const auto& cfg = result.config;
  std::cout << cfg.name << ": T=" << cfg.horizon << " trials=" << cfg.trials
            << " mean R_T=" << sb::format_double(result.final_regret.mean)
            << " (std " << sb::format_double(result.final_regret.std) << ")"
            << " mean alpha-R_T=" << sb::format_double(result.final_alpha_regret.mean)
            << " lock_rate=" << sb::format_double(result.lock_rate)
            << " mean_lock_cycle=" << sb::format_double(result.mean_lock_cycle)
            << " C0=" << sb::format_double(result.mean_c0) << "\n";
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int threads) {
  const sb::ExperimentConfig cfg = sb::build_config(sb::load_config_file(config_path));
  const sb::ExperimentResult result = sb::run_experiment(cfg, {true, threads});
  for (const std::string& path : sb::export_csv(result, out_dir)) {
    std::cout << "wrote " << path << "\n";
  }
  print_summary(result);
  return 0;
}

int cmd_verify(std::uint64_t seed) {
  int failures = 0;
  for (const sb::CheckResult& check : sb::run_invariant_suite(seed)) {
    std::cout << (check.passed ? "PASS " : "FAIL ") << check.name;
    if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
    std::cout << "\n";
    failures += check.passed ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::string& key,
              const std::vector<std::string>& values, const std::string& out_dir,
              int threads) {
  const sb::RawConfig base = sb::load_config_file(config_path);
  std::cout << "value,mean_regret,std_regret,mean_alpha_regret,std_alpha_regret,lock_rate,"
               "mean_lock_cycle,theoretical_c0\n";
  for (const std::string& value : values) {
    sb::RawConfig raw = base;
    sb::set_config_value(raw, key, value);
    const sb::ExperimentConfig cfg = sb::build_config(raw);
    const sb::ExperimentResult result = sb::run_experiment(cfg, {!out_dir.empty(), threads});
    if (!out_dir.empty()) {
      sb::export_csv(result, (std::filesystem::path(out_dir) / (key + "=" + value)).string());
    }
    std::cout << value << ',' << sb::format_double(result.final_regret.mean) << ','
              << sb::format_double(result.final_regret.std) << ','
              << sb::format_double(result.final_alpha_regret.mean) << ','
              << sb::format_double(result.final_alpha_regret.std) << ','
              << sb::format_double(result.lock_rate) << ','
              << sb::format_double(result.mean_lock_cycle) << ','
              << sb::format_double(result.mean_c0) << "\n";
  }
  return 0;
}

int cmd_certify(const std::string& config_path, int trial) {
  const sb::ExperimentConfig cfg = sb::build_config(sb::load_config_file(config_path));
  const sb::TrialInstance instance = sb::make_trial_instance(cfg, trial);
  const bool exhaustive = cfg.d <= sb::kExhaustiveRatioMaxDimension;
  const sb::RatioCertificate cert = sb::submodularity_ratio(
      instance.geometry, instance.theta_star,
      exhaustive ? sb::RatioMode::kExhaustive : sb::RatioMode::kSampled, cfg.ratio_sample_pairs,
      instance.basis_seed);
  std::cout << "geometry: " << instance.geometry.describe() << "\n"
            << "gamma: " << sb::format_double(cert.gamma) << "\n"
            << "alpha: " << sb::format_double(cert.alpha) << "\n"
            << "instances: " << cert.instance_count << "\n"
            << "exhaustive: " << (cert.exhaustive ? "true" : "false") << "\n";
  if (instance.geometry.kind() == sb::GeometryKind::kEllipsoid) {
    std::cout << "lambda_min(A): " << sb::format_double(instance.geometry.lambda_min()) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse linear bandit simulation lab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;

  auto* run = app.add_subcommand("run", "Run an experiment and write CSV artifacts");
  run->add_option("config", config_path, "Experiment config file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--threads", threads, "Worker threads (default: SPARSE_BANDIT_THREADS)");

  std::uint64_t verify_seed = 0;
  auto* verify = app.add_subcommand("verify", "Run the randomized invariant suite");
  verify->add_option("--seed", verify_seed, "Base seed");

  std::string sweep_key;
  std::vector<std::string> sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Run a grid over one config key");
  sweep->add_option("--param", sweep_key, "Key as section.name")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("config", config_path, "Experiment config file")->required();
  sweep->add_option("--out", out_dir, "Write CSVs per value under this directory");
  sweep->add_option("--threads", threads, "Worker threads");

  int trial = 0;
  auto* certify = app.add_subcommand("certify-ratio", "Print the submodularity-ratio certificate");
  certify->add_option("config", config_path, "Experiment config file")->required();
  certify->add_option("--trial", trial, "Trial whose instance is certified");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_dir, threads);
    if (*verify) return cmd_verify(verify_seed);
    if (*sweep) return cmd_sweep(config_path, sweep_key, sweep_values, out_dir, threads);
    if (*certify) return cmd_certify(config_path, trial);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
