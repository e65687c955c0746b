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

// Experiment configuration. Files are plain text:
//
//   # comment
//   [problem]
//   d = 20
//   H = 5
//
// Every key lives in a section and is addressed as "section.key". Unknown
// keys, duplicate keys and malformed values are errors.

#ifndef SPARSE_BANDIT_CONFIG_H_
#define SPARSE_BANDIT_CONFIG_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sparse_bandit/algorithms.h"
#include "sparse_bandit/estimation.h"
#include "sparse_bandit/geometry.h"

namespace sparse_bandit {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawConfig {
  std::map<std::string, std::string> values;
  std::string base_dir;  // relative file paths resolve against this
};

RawConfig parse_config_text(std::string_view text, std::string base_dir = ".");
RawConfig load_config_file(const std::string& path);
const std::vector<std::string>& known_config_keys();
// Sets `key` (which must be a known key), replacing any existing value.
void set_config_value(RawConfig& raw, const std::string& key, const std::string& value);

enum class ThetaSource { kUniform, kFile, kGapControlled };
enum class GapStyle { kStandard, kAdversarial };
enum class AlphaSource { kAuto, kOne, kExhaustive, kValue };

std::string_view to_string(GapStyle style);
GapStyle parse_gap_style(std::string_view name);

struct ExperimentConfig {
  std::string name = "experiment";
  AlgorithmMode mode = AlgorithmMode::kApsee;
  bool oracle_policy = false;  // always play the hindsight optimum
  BasisKind basis = BasisKind::kStandard;
  std::int64_t horizon = 2000;
  int trials = 20;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> checkpoints;

  int d = 20;
  int h = 5;
  double sigma = 0.5;
  double delta = 0.1;
  double sigma_scale = 1.0;  // the agent uses sigma * sigma_scale in eps_c

  GeometryKind geometry = GeometryKind::kEuclideanBall;
  double radius = 1.0;
  double p = 1.5;
  double lower = 0.0;
  double upper = 1.0;
  std::string matrix_file;  // ellipsoid; empty draws a random matrix per trial
  double eigen_min = 0.1;
  double eigen_max = 1.0;

  ThetaSource theta_source = ThetaSource::kUniform;
  std::string theta_file;
  double theta_gap = 0.2;
  GapStyle theta_style = GapStyle::kStandard;
  double theta_max_magnitude = 2.0;

  AlphaSource alpha_source = AlphaSource::kAuto;
  double alpha_value = 1.0;
  std::int64_t ratio_sample_pairs = 20000;

  int output_stride = 1;
};

ExperimentConfig build_config(const RawConfig& raw);
void validate(const ExperimentConfig& config);

}  // namespace sparse_bandit

#endif  // SPARSE_BANDIT_CONFIG_H_
