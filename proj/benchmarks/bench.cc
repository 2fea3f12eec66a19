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


#include <benchmark/benchmark.h>

#include "bellkit/feasibility.h"
#include "bellkit/generators.h"
#include "bellkit/simulate.h"

namespace {

using namespace bellkit;

void BM_MembershipDice(benchmark::State& state) {
  const Behavior b = dice_behavior(DiceKind::paper_demo);
  for (auto _ : state) benchmark::DoNotOptimize(local_membership(b));
}
BENCHMARK(BM_MembershipDice);

void BM_MembershipTsirelson(benchmark::State& state) {
  const Behavior b = quantum_behavior(tsirelson_setup());
  for (auto _ : state) benchmark::DoNotOptimize(local_membership(b));
}
BENCHMARK(BM_MembershipTsirelson);

void BM_MinInvarianceGap(benchmark::State& state) {
  const Behavior b = quantum_behavior(tsirelson_setup());
  for (auto _ : state) benchmark::DoNotOptimize(min_invariance_gap(b));
}
BENCHMARK(BM_MinInvarianceGap);

void BM_SimulateCounts(benchmark::State& state) {
  const Behavior b = quantum_behavior(tsirelson_setup());
  const auto runs = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_counts(b, runs, SettingPolicy::uniform(), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateCounts)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
