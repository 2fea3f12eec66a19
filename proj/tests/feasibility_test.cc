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

#include "bellkit/feasibility.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "bellkit/chsh.h"
#include "bellkit/errors.h"
#include "bellkit/generators.h"
#include "bellkit/nosignal.h"
#include "bellkit/rng.h"
#include "oracles.h"

namespace bellkit {
namespace {

namespace t = bellkit::testing;

// p(a, b | x, y) of a deterministic strategy.
Behavior deterministic(int a0, int a1, int b0, int b1) {
  const int a[2] = {a0, a1};
  const int b[2] = {b0, b1};
  return Behavior::from_function(Scenario::binary(),
                                 [&](int x, int y, std::size_t i, std::size_t j) {
                                   return static_cast<int>(i) == a[x] &&
                                                  static_cast<int>(j) == b[y]
                                              ? 1.0
                                              : 0.0;
                                 });
}

TEST(VertexTest, CountAndOrder) {
  const Scenario s = Scenario::binary();
  EXPECT_EQ(vertex_count(s), 16u);
  const auto vertices = enumerate_vertices(s);
  ASSERT_EQ(vertices.size(), 16u);
  EXPECT_EQ(vertices[0].alice, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(vertices[1].bob, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(vertices[8].alice, (std::vector<std::size_t>{1, 0}));
  const Scenario mixed({{0, 1, 2}}, {{0, 1}, {0, 1, 2, 3}});
  EXPECT_EQ(vertex_count(mixed), 24u);
}

TEST(VertexTest, CapIsEnforced) {
  const Scenario big = Scenario::uniform(10, 10, {0, 1, 2});
  EXPECT_THROW(vertex_count(big), DimensionError);
  EXPECT_THROW(vertex_count(Scenario::binary(), 15), DimensionError);
}

TEST(MembershipTest, DeterministicBehaviorIsInside) {
  const MembershipResult r = local_membership(deterministic(1, 0, 0, 1));
  EXPECT_EQ(r.status, MembershipStatus::inside);
  EXPECT_LE(r.residual, 1e-12);
  EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 1.0, 1e-12);
  // Vertex (a0, a1, b0, b1) = (1, 0, 0, 1) has index 9.
  EXPECT_NEAR(r.weights[9], 1.0, 1e-12);
}

TEST(MembershipTest, InsideWeightsReproduceBehavior) {
  const Behavior b = dice_behavior(DiceKind::common_roll);
  const MembershipResult r = local_membership(b);
  ASSERT_EQ(r.status, MembershipStatus::inside);
  EXPECT_TRUE(r.boundary);
  const Behavior rebuilt =
      global_joint_from_weights(b.scenario(), r.weights).induced_behavior();
  for (std::size_t i = 0; i < b.entries().size(); ++i) {
    EXPECT_NEAR(rebuilt.entries()[i], b.entries()[i], 1e-9);
  }
}

TEST(MembershipTest, UniformIsInsideNotBoundary) {
  const MembershipResult r = local_membership(uniform_binary());
  EXPECT_EQ(r.status, MembershipStatus::inside);
  EXPECT_FALSE(r.boundary);
  EXPECT_FALSE(r.certificate.has_value());
}

TEST(MembershipTest, PrBoxCertificate) {
  const Behavior b = pr_box();
  const MembershipResult r = local_membership(b);
  ASSERT_EQ(r.status, MembershipStatus::outside);
  ASSERT_TRUE(r.certificate.has_value());
  const BellFunctional& f = *r.certificate;
  EXPECT_NEAR(f.classical_bound, t::brute_classical_bound(f.coefficients), 1e-12);
  EXPECT_GT(evaluate(f, b), f.classical_bound + 1e-9);
  EXPECT_NEAR(r.noise_robustness, 0.5, 1e-9);
  double largest = 0.0;
  for (double c : f.coefficients) largest = std::max(largest, std::abs(c));
  EXPECT_NEAR(largest, 1.0, 1e-12);
}

TEST(MembershipTest, PrCertificateIsChshOnTheNoSignalingPolytope) {
  // All 24 vertices of the 2x2 binary no-signaling polytope: the value above
  // the classical bound is a fixed multiple of S - 2.
  const BellFunctional f = *local_membership(pr_box()).certificate;
  const double scale = (evaluate(f, pr_box()) - f.classical_bound) / 2.0;
  ASSERT_GT(scale, 0.0);
  std::vector<Behavior> vertices;
  for (int s = 0; s < 16; ++s) {
    vertices.push_back(deterministic(s >> 3 & 1, s >> 2 & 1, s >> 1 & 1, s & 1));
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) vertices.push_back(pr_box(a, b, c));
  for (const Behavior& v : vertices) {
    EXPECT_NEAR(evaluate(f, v) - f.classical_bound, scale * (chsh_S(v) - 2.0), 1e-9);
  }
}

TEST(MembershipTest, TsirelsonCertificateAndRobustness) {
  const Behavior b = quantum_behavior(tsirelson_setup());
  const MembershipResult r = local_membership(b);
  ASSERT_EQ(r.status, MembershipStatus::outside);
  const BellFunctional& f = *r.certificate;
  EXPECT_NEAR(f.classical_bound, t::brute_classical_bound(f.coefficients), 1e-12);
  EXPECT_GT(evaluate(f, b) - f.classical_bound, 1e-3);
  EXPECT_NEAR(r.noise_robustness, 1.0 / t::kSqrt2, 1e-9);
}

TEST(MembershipTest, NoisyPrThreshold) {
  EXPECT_EQ(local_membership(noisy_pr_box(0.49)).status, MembershipStatus::inside);
  EXPECT_EQ(local_membership(noisy_pr_box(0.51)).status, MembershipStatus::outside);
  const MembershipResult edge = local_membership(noisy_pr_box(0.5));
  EXPECT_EQ(edge.status, MembershipStatus::inside);
  EXPECT_TRUE(edge.boundary);
}

TEST(MembershipTest, AgreesWithCorrelatorOracle) {
  // For 2x2 binary no-signaling boxes, local exactly when every CHSH form is
  // at most 2.
  Xoshiro256 rng = Xoshiro256::for_stream(31, 0);
  int inside = 0, outside = 0;
  for (int i = 0; i < 300; ++i) {
    // Pull random boxes toward a random PR box so both sides are sampled.
    const Behavior pr = pr_box(static_cast<int>(rng.below(2)), static_cast<int>(rng.below(2)),
                               static_cast<int>(rng.below(2)));
    const Behavior b = mixture(pr, random_no_signaling_box(rng), rng.uniform());
    const double s = t::max_chsh(b);
    if (std::abs(s - 2.0) < 1e-6) continue;
    const MembershipResult r = local_membership(b);
    EXPECT_EQ(r.status == MembershipStatus::inside, s < 2.0) << "S = " << s;
    if (r.status == MembershipStatus::inside) {
      ++inside;
    } else {
      ++outside;
      EXPECT_NEAR(r.certificate->classical_bound,
                  t::brute_classical_bound(r.certificate->coefficients), 1e-12);
    }
  }
  EXPECT_GT(inside, 0);
  EXPECT_GT(outside, 0);
}

TEST(MembershipTest, NearPrBoxHasCertificate) {
  // Once stalled at zero robustness after a pivot on a round-off element.
  const Behavior b(Scenario::binary(),
                   {0.49992605027496578, 6.4605946279506937e-05, 0.0001093324109071268,
                    0.49990001136784762, 6.8417876822992203e-05, 0.49992223834442229,
                    0.49995958194989276, 4.9761828861936768e-05, 0.00012044607494415106,
                    0.49988441907868586, 0.49991493661092873, 8.0198235441247221e-05,
                    0.00013496347859222885, 0.49986990167503775, 0.49989303634812354,
                    0.00010209849824645233});
  const MembershipResult r = local_membership(b);
  ASSERT_EQ(r.status, MembershipStatus::outside);
  EXPECT_NEAR(r.noise_robustness, 2.0 / t::max_chsh(b), 1e-9);
  EXPECT_NEAR(r.certificate->classical_bound,
              t::brute_classical_bound(r.certificate->coefficients), 1e-12);
}

TEST(MembershipTest, LargerLhvScenarioIsInside) {
  const Scenario s({{0, 1, 2}, {0, 1}, {0, 1}}, {{0, 1}, {0, 1, 2}});
  Xoshiro256 rng = Xoshiro256::for_stream(8, 0);
  const Behavior b = lhv_behavior(random_lhv_model(s, 6, rng), s);
  const MembershipResult r = local_membership(b);
  EXPECT_EQ(r.status, MembershipStatus::inside);
  EXPECT_LE(r.residual, 1e-9);
}

TEST(GapTest, PrBox) {
  EXPECT_NEAR(min_invariance_gap(pr_box()), t::kPrMinGap, 1e-9);
  EXPECT_NEAR(min_tv_separation(pr_box()), t::kPrMinTv, 1e-9);
}

TEST(GapTest, TsirelsonSaturatesBound) {
  const Behavior b = quantum_behavior(tsirelson_setup());
  EXPECT_NEAR(min_invariance_gap(b), t::kTsirelsonMinGap, 1e-9);
  EXPECT_NEAR(min_invariance_gap(b), t::kSqrt2 - 1.0, 1e-9);
  EXPECT_NEAR(min_tv_separation(b), t::kTsirelsonMinTv, 1e-9);
  EXPECT_NEAR(t::frechet_min_gap(b, {}), t::kSqrt2 - 1.0, 1e-12);
}

TEST(GapTest, MatchesFrechetOracleOnRandomBoxes) {
  Xoshiro256 rng = Xoshiro256::for_stream(41, 0);
  for (int i = 0; i < 100; ++i) {
    const Behavior b = random_no_signaling_box(rng);
    for (const ChshPermutation& p : enumerate_permutations(b.scenario())) {
      const double gap = min_invariance_gap(b, p);
      EXPECT_NEAR(gap, t::frechet_min_gap(b, p), 1e-9);
      EXPECT_GE(gap, gap_lower_bound(b, p) - 1e-9);
      EXPECT_NEAR(min_tv_separation(b, p), t::frechet_min_tv(b, p), 1e-9);
    }
  }
}

TEST(GapTest, ZeroForLocalCommonRoll) {
  const Behavior b = dice_behavior(DiceKind::common_roll);
  EXPECT_NEAR(min_invariance_gap(b), 0.0, 1e-9);
  EXPECT_NEAR(min_tv_separation(b), 0.0, 1e-9);
}

TEST(GapTest, SignalingBehaviorRejected) {
  std::vector<double> entries(16, 0.25);
  entries[4] = 0.4;
  entries[6] = 0.1;
  const Behavior b(Scenario::binary(), entries);
  EXPECT_THROW(min_invariance_gap(b), NoSignalingError);
  EXPECT_THROW(min_tv_separation(b), NoSignalingError);
}

TEST(SignedJointTest, FrozenNegativities) {
  EXPECT_NEAR(signed_invariant_joint(pr_box()).negativity, t::kPrNegativity, 1e-9);
  EXPECT_NEAR(signed_invariant_joint(quantum_behavior(tsirelson_setup())).negativity,
              t::kTsirelsonNegativity, 1e-9);
}

TEST(SignedJointTest, ReproducesTables) {
  const Behavior b = pr_box();
  const SignedJoint q = signed_invariant_joint(b);
  const MixedRadix layout = global_layout(b.scenario());
  // Marginalize the signed table by hand.
  std::vector<double> induced(16, 0.0);
  for (std::size_t i = 0; i < q.table.size(); ++i) {
    const auto d = layout.decode(i);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) induced[4 * (2 * x + y) + 2 * d[x] + d[2 + y]] += q.table[i];
  }
  for (std::size_t k = 0; k < 16; ++k) EXPECT_NEAR(induced[k], b.entries()[k], 1e-9);
}

TEST(SignedJointTest, ZeroForLocal) {
  EXPECT_NEAR(signed_invariant_joint(dice_behavior(DiceKind::paper_demo)).negativity,
              0.0, 1e-9);
}

TEST(GlobalJointTest, FromLhvJoints) {
  const Scenario s = Scenario::binary(3, 2);
  Xoshiro256 rng = Xoshiro256::for_stream(12, 0);
  const LhvModel model = random_lhv_model(s, 5, rng);
  const Behavior b = lhv_behavior(model, s);
  const LhvJoints joints = lhv_compatible_joints(model, s);
  EXPECT_LE(invariance_deviation(joints.per_alice), 1e-12);
  const GlobalJoint q = build_global_joint(joints.per_alice, b);
  const Behavior induced = q.induced_behavior();
  for (std::size_t k = 0; k < b.entries().size(); ++k) {
    EXPECT_NEAR(induced.entries()[k], b.entries()[k], 1e-12);
  }
  for (const CompatibleJoint& j : q.compatible_joints()) {
    EXPECT_TRUE(verify_compatibility(j, b, 1e-12).compatible);
  }
}

TEST(GlobalJointTest, ProductJointsOfPrBoxAreNotInvariant) {
  const Behavior b = pr_box();
  std::vector<CompatibleJoint> joints{build_compatible_joint(b, 0),
                                      build_compatible_joint(b, 1)};
  EXPECT_GT(invariance_deviation(joints), 0.5);
  try {
    build_global_joint(joints, b);
    FAIL() << "expected InvarianceError";
  } catch (const InvarianceError& e) {
    EXPECT_NEAR(e.deviation(), invariance_deviation(joints), 1e-15);
  }
}

TEST(GlobalJointTest, WrongBehaviorIsIncompatible) {
  const Behavior b = dice_behavior(DiceKind::common_roll);
  std::vector<CompatibleJoint> joints{build_compatible_joint(b, 0),
                                      build_compatible_joint(b, 1)};
  EXPECT_THROW(build_global_joint(joints, dice_behavior(DiceKind::independent)),
               CompatibilityError);
}

}  // namespace
}  // namespace bellkit
