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

#ifndef BELLKIT_NOSIGNAL_H_
#define BELLKIT_NOSIGNAL_H_

#include <span>
#include <string>
#include <vector>

#include "bellkit/indexing.h"
#include "bellkit/model.h"

namespace bellkit {

/// Default no-signaling tolerance for exact behaviors.
inline constexpr double kTolNoSignaling = 1e-9;
/// Default z-score threshold for count data.
inline constexpr double kNoSignalingSigmas = 5.0;

/// p(a | x) computed from the (x, y) table, indexed by Alice outcome index.
std::vector<double> alice_marginal(const Behavior& behavior, int x, int y);
/// p(b | y) computed from the (x, y) table, indexed by Bob outcome index.
std::vector<double> bob_marginal(const Behavior& behavior, int x, int y);

/// Checks both directions of no-signaling: for each lab, the largest change
/// of a local marginal across the remote lab's settings. Never throws; the
/// report carries failures.
ValidationReport check_no_signaling(const Behavior& behavior,
                                    double tol = kTolNoSignaling);

/// Count-data variant: a marginal difference fails when it exceeds
/// `z_threshold` binomial standard errors. Setting pairs without runs are
/// skipped.
ValidationReport check_no_signaling(const EmpiricalBehavior& empirical,
                                    double z_threshold = kNoSignalingSigmas);

/// A distribution q_j(a_j, b_1, ..., b_n) over one Alice quantity and all of
/// Bob's quantities jointly. Digit 0 of the index is Alice's outcome index,
/// digit 1 + k is the outcome index of Bob's setting k.
class CompatibleJoint {
 public:
  CompatibleJoint(int alice_setting, MixedRadix layout,
                  std::vector<double> table);

  int alice_setting() const { return alice_setting_; }
  const MixedRadix& layout() const { return layout_; }
  std::span<const double> table() const { return table_; }
  int bob_settings() const { return static_cast<int>(layout_.digits()) - 1; }

  /// Sum over every Bob outcome except that of setting k: an |A_j| x |B_k|
  /// row-major table.
  std::vector<double> pair_marginal(int k) const;
  /// q_j(b_1, ..., b_n), indexed in the layout of Bob's digits only.
  std::vector<double> bob_marginal() const;

 private:
  int alice_setting_;
  MixedRadix layout_;
  std::vector<double> table_;
};

/// Layout of q_j for Alice setting j: (|A_j|, |B_1|, ..., |B_n|).
MixedRadix compatible_layout(const Scenario& scenario, int j);
/// Layout of Bob's joint outcome tuples (|B_1|, ..., |B_n|).
MixedRadix bob_layout(const Scenario& scenario);

/// The product construction
///   q_j(a, b_1..b_n) = prod_k p(a, b_k | j, k) / p(a)^(n-1),
/// with q_j(a, .) = 0 when p(a) = 0. Throws NoSignalingError when Alice's
/// marginals for setting j move with Bob's setting by more than `tol_ns`.
CompatibleJoint build_compatible_joint(const Behavior& behavior, int j,
                                       double tol_ns = kTolNoSignaling);

struct CompatibilityCheck {
  bool compatible = false;
  double max_deviation = 0.0;
};

/// Compares every pair marginal of `joint` with the measured p(a, b | j, k).
/// Throws DimensionError when the joint does not fit the behavior's scenario.
CompatibilityCheck verify_compatibility(const CompatibleJoint& joint,
                                        const Behavior& behavior, double tol);

/// The behavior whose (j, k) table is the (a_j, b_k) marginal of joints[j].
/// Requires one joint per Alice setting, in order.
Behavior induced_behavior(std::span<const CompatibleJoint> joints,
                          const Scenario& scenario);

/// q_j(B_k = B_l): the mass on tuples whose labels at Bob's settings k and l
/// agree.
double bob_equality(const CompatibleJoint& joint, const Scenario& scenario,
                    int k, int l);

/// JSON form: {"j": int, "entries": [{"a": label, "bs": [labels], "q": p}]},
/// listing nonzero entries only.
std::string compatible_joint_json(const CompatibleJoint& joint,
                                  const Scenario& scenario);

}  // namespace bellkit

#endif  // BELLKIT_NOSIGNAL_H_
