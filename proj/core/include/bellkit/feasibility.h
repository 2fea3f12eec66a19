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

#ifndef BELLKIT_FEASIBILITY_H_
#define BELLKIT_FEASIBILITY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bellkit/chsh.h"
#include "bellkit/indexing.h"
#include "bellkit/model.h"
#include "bellkit/nosignal.h"

namespace bellkit {

/// Residual tolerance for every LP-backed decision.
inline constexpr double kTolLp = 1e-9;
inline constexpr std::size_t kVertexCap = 1'000'000;
/// |S - 2| below this marks a behavior as sitting on the CHSH boundary.
inline constexpr double kBoundaryBand = 1e-7;

/// A deterministic local strategy: one outcome index per Alice setting and
/// one per Bob setting.
struct DeterministicVertex {
  std::vector<std::size_t> alice;
  std::vector<std::size_t> bob;
};

/// Layout shared by deterministic vertices and global joints:
/// (|A_1|, ..., |A_m|, |B_1|, ..., |B_n|).
MixedRadix global_layout(const Scenario& scenario);

/// Product of all outcome-set sizes. Throws DimensionError above `cap`.
std::size_t vertex_count(const Scenario& scenario,
                         std::size_t cap = kVertexCap);

/// All deterministic vertices, in global-layout order.
std::vector<DeterministicVertex> enumerate_vertices(
    const Scenario& scenario, std::size_t cap = kVertexCap);

/// A linear functional over behavior entries (Scenario::table_offset order)
/// with its largest value over the deterministic vertices.
struct BellFunctional {
  std::vector<double> coefficients;
  double classical_bound = 0.0;
  double value = 0.0;  // on the behavior it was built for
};

double evaluate(const BellFunctional& functional, const Behavior& behavior);

enum class MembershipStatus { inside, outside };

struct MembershipResult {
  MembershipStatus status = MembershipStatus::inside;
  // max_S within kBoundaryBand of 2 (2x2-or-larger scenarios only).
  bool boundary = false;
  // Weight per vertex in global-layout order (inside only). These weights
  // are a global joint distribution over all m + n quantities.
  std::vector<double> weights;
  // Separating functional from LP duality (outside only), re-verified
  // against every vertex.
  std::optional<BellFunctional> certificate;
  // Reconstruction error (inside) or certificate margin value - bound
  // (outside).
  double residual = 0.0;
  // Largest t in [0, 1] with t * p + (1 - t) * uniform still local (outside
  // only; 1 when inside).
  double noise_robustness = 1.0;
};

/// Decides whether the behavior is a convex mixture of deterministic
/// vertices. Throws LpFailure when the simplex result cannot be verified at
/// `tol_lp`.
MembershipResult local_membership(const Behavior& behavior,
                                  double tol_lp = kTolLp);

/// q(a_1, ..., a_m, b_1, ..., b_n) in global-layout order.
class GlobalJoint {
 public:
  GlobalJoint(Scenario scenario, std::vector<double> table);

  const Scenario& scenario() const { return scenario_; }
  const MixedRadix& layout() const { return layout_; }
  std::span<const double> table() const { return table_; }

  /// The (a_j, b_k) marginal as an |A_j| x |B_k| row-major table.
  std::vector<double> pair_marginal(int j, int k) const;
  /// The behavior made of every pair marginal.
  Behavior induced_behavior() const;
  /// q_j(a_j, b_1..b_n) for each Alice setting; their Bob-marginals agree.
  std::vector<CompatibleJoint> compatible_joints() const;

 private:
  Scenario scenario_;
  MixedRadix layout_;
  std::vector<double> table_;
};

/// The global joint carried by an inside membership result.
GlobalJoint global_joint_from_weights(const Scenario& scenario,
                                      std::span<const double> weights);

/// Largest total-variation distance between the Bob-marginals of any two
/// joints.
double invariance_deviation(std::span<const CompatibleJoint> joints);

/// q = prod_j q_j(a_j, b) / q(b)^(m-1), zero where q(b) vanishes. Throws
/// InvarianceError when the Bob-marginals differ by more than `tol_inv` in
/// total variation, and CompatibilityError when the joints do not reproduce
/// the behavior.
GlobalJoint build_global_joint(std::span<const CompatibleJoint> joints,
                               const Behavior& behavior,
                               double tol_inv = kTolNorm);

/// Minimum of q(B=B') - q'(B=B') over all pairs of compatible joints, with q
/// over (A, B, B') and q' over (A', B, B') as selected by `perm`. Throws
/// NoSignalingError when the selected marginals signal beyond `tol_ns` and
/// LpFailure on solver trouble.
double min_invariance_gap(const Behavior& behavior,
                          const ChshPermutation& perm = {},
                          double tol_ns = kTolNoSignaling);

/// Minimum total-variation distance between q(b, b') and q'(b, b') over the
/// same pairs.
double min_tv_separation(const Behavior& behavior,
                         const ChshPermutation& perm = {},
                         double tol_ns = kTolNoSignaling);

struct SignedJoint {
  std::vector<double> table;  // global-layout order, may be negative
  double negativity = 0.0;    // sum of max(0, -q)
};

/// A signed global joint reproducing every measured table with the least
/// total negative mass. Throws NoSignalingError when no signed solution
/// exists.
SignedJoint signed_invariant_joint(const Behavior& behavior,
                                   double tol_lp = kTolLp);

}  // namespace bellkit

#endif  // BELLKIT_FEASIBILITY_H_
