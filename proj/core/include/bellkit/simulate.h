// Copyright 2026 The bellkit Authors.
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

#ifndef BELLKIT_SIMULATE_H_
#define BELLKIT_SIMULATE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bellkit/chsh.h"
#include "bellkit/model.h"

namespace bellkit {

/// How each run picks its setting pair.
struct SettingPolicy {
  enum class Kind { uniform_random, round_robin, fixed };
  Kind kind = Kind::uniform_random;
  int x = 0;  // fixed only
  int y = 0;

  static SettingPolicy uniform() { return {}; }
  static SettingPolicy round_robin() { return {Kind::round_robin, 0, 0}; }
  static SettingPolicy fixed(int x, int y) { return {Kind::fixed, x, y}; }

  /// "uniform", "round-robin", or "fixed:X,Y".
  std::string name() const;
  static SettingPolicy parse(std::string_view text);
};

/// Recorded in reports so a run can be reproduced.
inline constexpr const char* kRngDescription =
    "xoshiro256** with one stream per run: run i is seeded with "
    "splitmix64(seed) ^ splitmix64(i), expanded by splitmix64";

struct RunRecord {
  std::uint64_t run = 0;
  int x = 0;
  int y = 0;
  Label a = 0;
  Label b = 0;
};

struct Dataset {
  Scenario scenario;
  std::vector<RunRecord> runs;
  std::uint64_t seed = 0;
  SettingPolicy policy;
};

/// Draws `n_runs` runs. Run i uses its own generator stream derived from
/// (seed, i), so the output is bit-identical for any `workers` count.
Dataset simulate_runs(const Behavior& behavior, std::uint64_t n_runs,
                      SettingPolicy policy, std::uint64_t seed,
                      unsigned workers = 1);

/// Same draws as simulate_runs, tallied straight into counts without
/// storing the runs.
EmpiricalBehavior simulate_counts(const Behavior& behavior, std::uint64_t n_runs,
                                  SettingPolicy policy, std::uint64_t seed,
                                  unsigned workers = 1);

/// Per-pair outcome counts of a dataset.
EmpiricalBehavior estimate_behavior(const Dataset& dataset);

/// "run,x,y,a,b" rows with a header.
std::string dataset_csv(const Dataset& dataset);

/// CHSH evaluated on frequencies, with binomial error propagation:
/// sigma_S^2 = sum over the four pairs of 4 f (1 - f) / N.
struct EmpiricalChsh {
  ChshReport report;
  double sigma_S = 0.0;
  double sigma_probability_form = 0.0;
};

/// Throws DimensionError when a pair the permutation uses has no runs.
EmpiricalChsh empirical_chsh(const EmpiricalBehavior& empirical,
                             const ChshPermutation& perm = {});

}  // namespace bellkit

#endif  // BELLKIT_SIMULATE_H_
