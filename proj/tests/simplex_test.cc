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

#include "bellkit/simplex.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace bellkit::lp {
namespace {

// Checks A^T y <= c + tol for the reported duals.
void expect_dual_feasible(const LinearProgram& p, const Solution& s, double tol) {
  std::vector<double> column(p.variables(), 0.0);
  for (std::size_t i = 0; i < p.constraints(); ++i) {
    for (const auto& [v, c] : p.rows()[i]) column[v] += c * s.duals[i];
  }
  for (std::size_t v = 0; v < p.variables(); ++v) {
    EXPECT_LE(column[v], p.costs()[v] + tol) << "variable " << v;
  }
}

TEST(SimplexTest, SmallOptimum) {
  // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6: optimum at (1.6, 1.2).
  LinearProgram p;
  const auto x = p.add_variable(-1.0);
  const auto y = p.add_variable(-1.0);
  const auto s1 = p.add_variable();
  const auto s2 = p.add_variable();
  p.add_constraint({{x, 1.0}, {y, 2.0}, {s1, 1.0}}, 4.0);
  p.add_constraint({{x, 3.0}, {y, 1.0}, {s2, 1.0}}, 6.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_NEAR(s.x[x], 1.6, 1e-12);
  EXPECT_NEAR(s.x[y], 1.2, 1e-12);
  EXPECT_NEAR(s.objective, -2.8, 1e-12);
  // Strong duality: b^T y equals the optimum.
  EXPECT_NEAR(4.0 * s.duals[0] + 6.0 * s.duals[1], s.objective, 1e-12);
  expect_dual_feasible(p, s, 1e-12);
}

TEST(SimplexTest, NegativeRightHandSide) {
  // -x = -3 with x >= 0.
  LinearProgram p;
  const auto x = p.add_variable(1.0);
  p.add_constraint({{x, -1.0}}, -3.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_NEAR(s.x[x], 3.0, 1e-12);
  EXPECT_NEAR(-3.0 * s.duals[0], 3.0, 1e-12);
}

TEST(SimplexTest, InfeasibleWithFarkasRay) {
  // x + y = 1 and x + y = 2.
  LinearProgram p;
  const auto x = p.add_variable();
  const auto y = p.add_variable();
  p.add_constraint({{x, 1.0}, {y, 1.0}}, 1.0);
  p.add_constraint({{x, 1.0}, {y, 1.0}}, 2.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::infeasible);
  ASSERT_EQ(s.farkas.size(), 2u);
  EXPECT_GT(1.0 * s.farkas[0] + 2.0 * s.farkas[1], 0.0);
  EXPECT_LE(s.farkas[0] + s.farkas[1], 1e-12);
  EXPECT_GT(s.phase_one_objective, 0.0);
}

TEST(SimplexTest, Unbounded) {
  // min -x  s.t. x - y = 0.
  LinearProgram p;
  const auto x = p.add_variable(-1.0);
  const auto y = p.add_variable();
  p.add_constraint({{x, 1.0}, {y, -1.0}}, 0.0);
  EXPECT_EQ(solve(p).status, Status::unbounded);
}

TEST(SimplexTest, RedundantRowsAreHarmless) {
  LinearProgram p;
  const auto x = p.add_variable(1.0);
  const auto y = p.add_variable(2.0);
  p.add_constraint({{x, 1.0}, {y, 1.0}}, 1.0);
  p.add_constraint({{x, 2.0}, {y, 2.0}}, 2.0);
  p.add_constraint({{x, 1.0}, {y, 1.0}}, 1.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_NEAR(s.objective, 1.0, 1e-12);
  expect_dual_feasible(p, s, 1e-12);
}

TEST(SimplexTest, RepeatedVariablesAddUp) {
  LinearProgram p;
  const auto x = p.add_variable(1.0);
  p.add_constraint({{x, 1.0}, {x, 1.0}}, 3.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_NEAR(s.x[x], 1.5, 1e-12);
}

TEST(SimplexTest, DegenerateCyclingExample) {
  // Beale's example, which cycles under the plain largest-coefficient rule.
  // min -3/4 x4 + 20 x5 - 1/2 x6 + 6 x7 with slacks s1..s3.
  LinearProgram p;
  const auto x4 = p.add_variable(-0.75);
  const auto x5 = p.add_variable(20.0);
  const auto x6 = p.add_variable(-0.5);
  const auto x7 = p.add_variable(6.0);
  const auto s1 = p.add_variable();
  const auto s2 = p.add_variable();
  const auto s3 = p.add_variable();
  p.add_constraint({{x4, 0.25}, {x5, -8.0}, {x6, -1.0}, {x7, 9.0}, {s1, 1.0}}, 0.0);
  p.add_constraint({{x4, 0.5}, {x5, -12.0}, {x6, -0.5}, {x7, 3.0}, {s2, 1.0}}, 0.0);
  p.add_constraint({{x6, 1.0}, {s3, 1.0}}, 1.0);
  const Solution s = solve(p);
  ASSERT_EQ(s.status, Status::optimal);
  EXPECT_NEAR(s.objective, -1.25, 1e-12);
}

TEST(SimplexTest, IterationLimitReported) {
  LinearProgram p;
  std::vector<LinearProgram::Term> row;
  for (int i = 0; i < 20; ++i) row.emplace_back(p.add_variable(-1.0 - i), 1.0);
  p.add_constraint(row, 1.0);
  Options options;
  options.max_iterations = 1;
  const Solution s = solve(p, options);
  EXPECT_TRUE(s.status == Status::iteration_limit || s.status == Status::optimal);
  EXPECT_STREQ(to_string(Status::infeasible), "infeasible");
}

}  // namespace
}  // namespace bellkit::lp
