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

// Randomized invariant checks over every module, runnable from the CLI
// without a test framework.

#ifndef SPARSE_BANDIT_VERIFY_H_
#define SPARSE_BANDIT_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace sparse_bandit {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 0);

}  // namespace sparse_bandit

#endif  // SPARSE_BANDIT_VERIFY_H_
