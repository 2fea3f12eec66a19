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

#include "bellkit/report.h"

#include <gtest/gtest.h>

#include <string>

#include "bellkit/generators.h"
#include "bellkit/simulate.h"
#include "json.hpp"

namespace bellkit {
namespace {

using nlohmann::json;

TEST(ReportTest, PrBoxSummary) {
  const AnalysisReport r = analyze(pr_box());
  ASSERT_TRUE(r.max_index.has_value());
  EXPECT_EQ(r.permutations[*r.max_index].correlator_S, 4.0);
  ASSERT_TRUE(r.membership.has_value());
  EXPECT_EQ(r.membership->status, MembershipStatus::outside);
  ASSERT_TRUE(r.gap.has_value());
  EXPECT_EQ(r.gap->lower_bound, 1.0);
  EXPECT_NEAR(r.gap->min_invariance_gap, 1.0, 1e-9);
  EXPECT_TRUE(r.gap->saturated);

  const json doc = json::parse(report_json(r));
  EXPECT_EQ(doc["chsh"]["max"]["S"].get<double>(), 4.0);
  EXPECT_EQ(doc["membership"]["status"], "outside");
  EXPECT_EQ(doc["gap"]["lower_bound"].get<double>(), 1.0);
  EXPECT_EQ(doc["chsh"]["permutations"].size(), 8u);
  EXPECT_EQ(doc["membership"]["certificate"]["coefficients"].size(), 16u);
}

TEST(ReportTest, CommonRollDiceInsideWithZeroGap) {
  const AnalysisReport r = analyze(dice_behavior(DiceKind::common_roll));
  EXPECT_NEAR(r.permutations[*r.max_index].correlator_S, 2.0, 1e-12);
  EXPECT_EQ(r.membership->status, MembershipStatus::inside);
  EXPECT_TRUE(r.membership->boundary);
  EXPECT_NEAR(r.gap->lower_bound, 0.0, 1e-12);
  const std::string text = report_text(r);
  EXPECT_NE(text.find("status: inside"), std::string::npos);
  EXPECT_NE(text.find("largest S: 2.000000"), std::string::npos);
}

TEST(ReportTest, SignalingMarksSectionsNotApplicable) {
  std::vector<double> entries(16, 0.25);
  entries[4] = 0.4;
  entries[6] = 0.1;
  const AnalysisReport r = analyze(Behavior(Scenario::binary(), entries));
  EXPECT_FALSE(r.validation.no_signaling());
  EXPECT_FALSE(r.membership.has_value());
  EXPECT_FALSE(r.gap.has_value());
  const json doc = json::parse(report_json(r));
  EXPECT_FALSE(doc["no_signaling"]["pass"].get<bool>());
  EXPECT_FALSE(doc["membership"]["applicable"].get<bool>());
  EXPECT_FALSE(doc["gap"]["applicable"].get<bool>());
  const std::string text = report_text(r);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
  EXPECT_NE(text.find("membership: not applicable"), std::string::npos);
}

TEST(ReportTest, TsirelsonText) {
  const std::string text = report_text(analyze(quantum_behavior(tsirelson_setup())));
  EXPECT_NE(text.find("0.853553"), std::string::npos);
  EXPECT_NE(text.find("3.414214"), std::string::npos);
  EXPECT_NE(text.find("2.828427"), std::string::npos);
  EXPECT_NE(text.find("bound saturated: yes"), std::string::npos);
}

TEST(ReportTest, JsonIsDeterministic) {
  const Behavior b = quantum_behavior(tsirelson_setup());
  EXPECT_EQ(report_json(analyze(b)), report_json(analyze(b)));
  const EmpiricalBehavior e = simulate_counts(b, 20000, SettingPolicy::uniform(), 9);
  EXPECT_EQ(report_json(analyze(e)), report_json(analyze(e)));
}

TEST(ReportTest, EmpiricalReportCarriesErrorBars) {
  const EmpiricalBehavior e = simulate_counts(quantum_behavior(tsirelson_setup()), 100000,
                                              SettingPolicy::uniform(), 4);
  const AnalysisReport r = analyze(e);
  EXPECT_TRUE(r.empirical);
  EXPECT_EQ(r.total_runs, 100000u);
  ASSERT_EQ(r.sigma_S.size(), r.permutations.size());
  EXPECT_FALSE(r.membership.has_value());
  const json doc = json::parse(report_json(r));
  EXPECT_EQ(doc["input"]["kind"], "empirical");
  EXPECT_GT(doc["chsh"]["max"]["significance_sigmas"].get<double>(), 10.0);
  EXPECT_NE(doc["rng"].get<std::string>().find("xoshiro256**"), std::string::npos);
}

TEST(ReportTest, ExactAndEstimatedClassificationsAgree) {
  // Agreement required whenever |S - 2| exceeds ten standard errors.
  for (const Behavior& b :
       {quantum_behavior(tsirelson_setup()), noisy_pr_box(0.45), noisy_pr_box(0.55)}) {
    const AnalysisReport exact = analyze(b);
    const AnalysisReport estimated =
        analyze(simulate_counts(b, 10000000, SettingPolicy::uniform(), 17, 4));
    const double s_exact = exact.permutations[*exact.max_index].correlator_S;
    const double s_est = estimated.permutations[*estimated.max_index].correlator_S;
    const double sigma = estimated.sigma_S[*estimated.max_index];
    ASSERT_GT(std::abs(s_exact - 2.0), 10 * sigma);
    EXPECT_EQ(s_exact > 2.0, s_est > 2.0);
    EXPECT_EQ(exact.membership->status == MembershipStatus::outside, s_est > 2.0);
  }
}

TEST(ReportTest, FixedSixDecimals) {
  EXPECT_EQ(fixed6(2.8284271247), "2.828427");
  EXPECT_EQ(fixed6(-1e-12), "0.000000");
  EXPECT_EQ(fixed6(1.0 / 0.0), "inf");
}

TEST(ReportTest, MembershipAndGapRenderers) {
  const Behavior b = pr_box();
  const MembershipResult m = local_membership(b);
  const json mj = json::parse(membership_json(m, b.scenario()));
  EXPECT_EQ(mj["status"], "outside");
  EXPECT_NEAR(mj["noise_robustness"].get<double>(), 0.5, 1e-9);
  const GapAnalysis g = gap_analysis(b);
  const json gj = json::parse(gap_json(g));
  EXPECT_NEAR(gj["min_tv_separation"].get<double>(), 1.0, 1e-9);
  EXPECT_NE(gap_text(g).find("bound saturated: yes"), std::string::npos);
  const MembershipResult inside = local_membership(dice_behavior(DiceKind::common_roll));
  const json ij = json::parse(membership_json(inside, Scenario::uniform(2, 2, {1, 2, 3, 4, 5, 6})));
  double total = 0.0;
  for (const auto& v : ij["decomposition"]) total += v["weight"].get<double>();
  EXPECT_NEAR(total, 1.0, 1e-9);
}

}  // namespace
}  // namespace bellkit
