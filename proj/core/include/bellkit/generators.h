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

#ifndef BELLKIT_GENERATORS_H_
#define BELLKIT_GENERATORS_H_

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bellkit/model.h"
#include "bellkit/nosignal.h"
#include "bellkit/rng.h"

namespace bellkit {

/// A local hidden-variable model: weights p(lambda) and local response
/// distributions p(a | x, lambda), p(b | y, lambda) over outcome indices.
struct LhvModel {
  std::vector<double> weights;
  // alice_response[x][lambda][a], bob_response[y][lambda][b].
  std::vector<std::vector<std::vector<double>>> alice_response;
  std::vector<std::vector<std::vector<double>>> bob_response;

  std::size_t lambda_count() const { return weights.size(); }

  /// Throws DimensionError or NormalizationError unless the model fits the
  /// scenario and every distribution is normalized within kTolNorm.
  void validate(const Scenario& scenario) const;
};

/// p(a, b | x, y) = sum_lambda p(lambda) p(a | x, lambda) p(b | y, lambda).
Behavior lhv_behavior(const LhvModel& model, const Scenario& scenario);

struct LhvJoints {
  // q_L for each Alice setting, in the compatible-joint layout.
  std::vector<CompatibleJoint> per_alice;
  // sum_lambda p(lambda) prod_k p(b_k | lambda), in the Bob layout.
  std::vector<double> bob_marginal;
};

/// The hidden-variable compatible joints
///   q_L(a_j, b_1..b_n) = sum_lambda p(lambda) p(a_j|lambda) prod_k p(b_k|lambda),
/// whose Bob-marginals coincide by construction.
LhvJoints lhv_compatible_joints(const LhvModel& model, const Scenario& scenario);

/// Random model: Dirichlet(1) weights and responses; with `deterministic`,
/// each response is a point mass on a uniformly chosen outcome.
LhvModel random_lhv_model(const Scenario& scenario, std::size_t lambda_count,
                          Xoshiro256& rng, bool deterministic = false);

/// Reads and writes the LHV model file:
///   {"scenario": {...}, "weights": [...],
///    "alice_response": [[[...], ...], ...], "bob_response": [...]}
LhvModel load_lhv_model(std::string_view text, Scenario* scenario);
std::string dump_lhv_model(const LhvModel& model, const Scenario& scenario);

/// Binary 2x2 box with outcome a = b except for (x, y) = (1, 1), where a != b.
Behavior pr_box();
/// The PR box relabeled: a XOR b = x y XOR alpha x XOR beta y XOR gamma.
Behavior pr_box(int alpha, int beta, int gamma);
/// visibility * pr_box() + (1 - visibility) * uniform noise.
Behavior noisy_pr_box(double visibility);
/// Uniform independent binary 2x2 behavior.
Behavior uniform_binary();

/// Random point of the binary 2x2 no-signaling polytope: Dirichlet(1)
/// weights on 1 to 4 distinct vertices drawn from its 24 (16 deterministic,
/// 8 PR boxes).
Behavior random_no_signaling_box(Xoshiro256& rng);

enum class DiceKind { independent, common_roll, paper_demo };

/// Parses "independent", "common-roll", or "paper-demo".
DiceKind parse_dice_kind(std::string_view name);

/// Two six-sided dice, two settings per lab, faces labeled 1..6.
///  - independent: uniform product.
///  - common-roll: one shared uniform roll seen by both labs.
///  - paper-demo: a shared roll r; A, A' and B read r, while B' reads the
///    opposite face 7 - r. S = 2, on the classical boundary.
Behavior dice_behavior(DiceKind kind);

/// Two qubits, basis order |00>, |01>, |10>, |11> with Alice first. On each
/// qubit outcome 1 projects onto (cos t, sin t) and outcome 0 onto
/// (-sin t, cos t).
struct QuantumSetup {
  std::array<std::complex<double>, 4> state{};
  std::vector<double> alice_angles;  // radians
  std::vector<double> bob_angles;    // radians

  /// (|00> + |11>)/sqrt(2): p(A = B) = cos^2(alpha - beta).
  static std::array<std::complex<double>, 4> maximally_correlated();
  /// (|01> - |10>)/sqrt(2): p(A = B) = sin^2(alpha - beta).
  static std::array<std::complex<double>, 4> singlet();
};

/// Born-rule behavior with outcome labels {0, 1}. Throws DimensionError for
/// a state that is not unit-norm within 1e-12 or a non-finite angle.
Behavior quantum_behavior(const QuantumSetup& setup);

/// Maximally correlated state with alpha = 0, alpha' = 45 deg, beta = 22.5
/// deg, beta' = -22.5 deg.
QuantumSetup tsirelson_setup();

inline constexpr double degrees(double deg) {
  return deg * 3.14159265358979323846 / 180.0;
}

}  // namespace bellkit

#endif  // BELLKIT_GENERATORS_H_
