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

// CSV artifacts of an experiment. Rows are trial-major, then t; floats use
// the shortest representation that round-trips, so identical results give
// byte-identical files.
//
//   regret.csv       trial,t,cycle,phase,inst_regret,cum_regret,
//                    inst_alpha_regret,cum_alpha_regret
//   cycles.csv       trial,c,eps_c,gap,locked,ols_error
//   recovery.csv     trial,t,overlap_fraction
//   summary.csv      one row of aggregate statistics
//   checkpoints.csv  t,mean/std regret at each configured checkpoint
//
// regret.csv and recovery.csv keep every output.stride-th step plus the
// last one.

#ifndef SPARSE_BANDIT_CSV_EXPORT_H_
#define SPARSE_BANDIT_CSV_EXPORT_H_

#include <string>
#include <vector>

#include "sparse_bandit/experiment.h"

namespace sparse_bandit {

std::string format_double(double value);

std::string regret_csv(const ExperimentResult& result);
std::string cycles_csv(const ExperimentResult& result);
std::string recovery_csv(const ExperimentResult& result);
std::string summary_csv(const ExperimentResult& result);
std::string checkpoints_csv(const ExperimentResult& result);

// Writes the files above into `out_dir` (created if missing) and returns
// their paths. Throws std::runtime_error on I/O failure or when the result
// was produced without per-step records.
std::vector<std::string> export_csv(const ExperimentResult& result, const std::string& out_dir);

}  // namespace sparse_bandit

#endif  // SPARSE_BANDIT_CSV_EXPORT_H_
