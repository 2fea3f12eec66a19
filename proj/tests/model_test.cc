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

#include "bellkit/model.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bellkit/errors.h"

namespace bellkit {
namespace {

TEST(ScenarioTest, BinaryLayout) {
  const Scenario s = Scenario::binary();
  EXPECT_EQ(s.alice_settings(), 2);
  EXPECT_EQ(s.bob_settings(), 2);
  EXPECT_EQ(s.entry_count(), 16u);
  EXPECT_EQ(s.table_offset(0, 0), 0u);
  EXPECT_EQ(s.table_offset(0, 1), 4u);
  EXPECT_EQ(s.table_offset(1, 0), 8u);
  EXPECT_EQ(s.table_offset(1, 1), 12u);
}

TEST(ScenarioTest, MixedOutcomeCounts) {
  const Scenario s({{0, 1}, {0, 1, 2}}, {{5, 6, 7}});
  EXPECT_EQ(s.entry_count(), 2u * 3u + 3u * 3u);
  EXPECT_EQ(s.table_offset(1, 0), 6u);
  EXPECT_EQ(s.bob_index(0, 6), 1u);
  EXPECT_FALSE(s.bob_index(0, 4).has_value());
  EXPECT_FALSE(s.alice_index(0, 2).has_value());
}

TEST(ScenarioTest, RejectsInvalidShapes) {
  EXPECT_THROW(Scenario({}, {{0, 1}}), DimensionError);
  EXPECT_THROW(Scenario({{0, 1}}, {}), DimensionError);
  EXPECT_THROW(Scenario({{}}, {{0, 1}}), DimensionError);
  EXPECT_THROW(Scenario({{0, 0}}, {{0, 1}}), DimensionError);
}

TEST(ScenarioTest, SettingRangeChecked) {
  const Scenario s = Scenario::binary();
  EXPECT_THROW(s.alice_outcomes(2), DimensionError);
  EXPECT_THROW(s.bob_outcomes(-1), DimensionError);
  EXPECT_THROW(s.check_settings(0, 2), DimensionError);
}

TEST(BehaviorTest, AcceptsNormalizedTables) {
  const Behavior b(Scenario::binary(), std::vector<double>(16, 0.25));
  EXPECT_DOUBLE_EQ(b.prob(1, 0, 1, 1), 0.25);
  EXPECT_EQ(b.table(1, 1).size(), 4u);
}

TEST(BehaviorTest, RejectsUnnormalizedTable) {
  std::vector<double> entries(16, 0.25);
  entries[5] = 0.3;
  EXPECT_THROW(Behavior(Scenario::binary(), entries), NormalizationError);
}

TEST(BehaviorTest, RejectsNegativeEntry) {
  std::vector<double> entries(16, 0.25);
  entries[0] = -0.1;
  entries[1] = 0.6;
  EXPECT_THROW(Behavior(Scenario::binary(), entries), NormalizationError);
}

TEST(BehaviorTest, RejectsWrongLength) {
  EXPECT_THROW(Behavior(Scenario::binary(), std::vector<double>(15, 0.25)),
               DimensionError);
}

TEST(BehaviorTest, ClampsRoundingNoise) {
  std::vector<double> entries(16, 0.25);
  entries[0] = 0.5 + 1e-12;
  entries[1] = -1e-12;
  entries[2] = 0.25;
  entries[3] = 0.25;
  const Behavior b(Scenario::binary(), entries);
  EXPECT_GE(b.prob(0, 0, 0, 1), 0.0);
  double sum = 0.0;
  for (double p : b.table(0, 0)) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(BehaviorTest, EqualityAndCorrelation) {
  const Behavior b = Behavior::from_function(
      Scenario::binary(), [](int, int, std::size_t a, std::size_t c) {
        return a == c ? 0.4 : 0.1;
      });
  EXPECT_NEAR(equality_probability(b, 0, 1), 0.8, 1e-15);
  EXPECT_NEAR(correlation(b, 0, 1), 0.6, 1e-15);
}

TEST(BehaviorTest, EqualityUsesLabelsNotIndices) {
  // Alice reports {0, 1}, Bob reports {1, 0}: index equality is label
  // inequality.
  const Scenario s({{0, 1}}, {{1, 0}});
  const Behavior b(s, {0.5, 0.0, 0.0, 0.5});
  EXPECT_DOUBLE_EQ(equality_probability(b, 0, 0), 0.0);
}

TEST(BehaviorTest, Mixture) {
  const Behavior one = Behavior::from_function(
      Scenario::binary(), [](int, int, std::size_t a, std::size_t b) {
        return a == b ? 0.5 : 0.0;
      });
  const Behavior two(Scenario::binary(), std::vector<double>(16, 0.25));
  const Behavior mix = mixture(one, two, 0.25);
  EXPECT_NEAR(mix.prob(0, 0, 0, 0), 0.25 * 0.5 + 0.75 * 0.25, 1e-15);
  EXPECT_THROW(mixture(one, two, 1.5), DimensionError);
}

TEST(EmpiricalBehaviorTest, FrequencyAndStandardError) {
  // 50 runs of (0, 0) and 50 of (1, 1) at pair (0, 0).
  std::vector<std::uint64_t> counts(16, 0);
  counts[0] = 50;
  counts[3] = 50;
  const EmpiricalBehavior e(Scenario::binary(), counts);
  EXPECT_EQ(e.runs(0, 0), 100u);
  EXPECT_DOUBLE_EQ(e.frequency(0, 0, 0, 0), 0.5);
  EXPECT_DOUBLE_EQ(e.standard_error(0, 0, 0, 0), 0.05);
  EXPECT_DOUBLE_EQ(e.standard_error(0, 0, 0, 1), 0.0);
}

TEST(EmpiricalBehaviorTest, EmptyPairIsFlagged) {
  std::vector<std::uint64_t> counts(16, 0);
  counts[0] = 10;
  const EmpiricalBehavior e(Scenario::binary(), counts);
  EXPECT_TRUE(e.has_runs(0, 0));
  EXPECT_FALSE(e.has_runs(1, 1));
  EXPECT_FALSE(e.complete());
  EXPECT_EQ(e.runs(1, 1), 0u);
  EXPECT_THROW(e.frequencies(), DimensionError);
}

}  // namespace
}  // namespace bellkit
