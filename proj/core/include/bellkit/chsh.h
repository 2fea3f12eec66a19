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

#ifndef BELLKIT_CHSH_H_
#define BELLKIT_CHSH_H_

#include <string>
#include <vector>

#include "bellkit/model.h"

namespace bellkit {

/// Which settings play A, A', B, B' in
///   S = E(A,B) + E(A,B') + E(A',B) - E(A',B').
/// With `flipped` set, Alice's two outcomes are swapped before comparing, so
/// every p(A = B) becomes p(A != B). Flipping is only defined when A and A'
/// share one two-label set that contains all of B's and B''s labels.
struct ChshPermutation {
  int alice = 0;        // A
  int alice_prime = 1;  // A'
  int bob = 0;          // B
  int bob_prime = 1;    // B'
  bool flipped = false;

  std::string label() const;
  bool operator==(const ChshPermutation&) const = default;
};

/// Throws DimensionError for out-of-range or repeated settings, or a flip the
/// scenario does not support.
void check_permutation(const Scenario& scenario, const ChshPermutation& perm);
bool flip_supported(const Scenario& scenario, const ChshPermutation& perm);

/// Every ordered choice of two distinct Alice and two distinct Bob settings,
/// plus its flipped variant where supported. Empty when either lab has fewer
/// than two settings. For a binary 2x2 scenario this is the 8 CHSH forms.
std::vector<ChshPermutation> enumerate_permutations(const Scenario& scenario);

/// The four probabilities of the probability form.
struct ChshTerms {
  double equal_ab = 0.0;               // p(A = B)
  double equal_ab_prime = 0.0;         // p(A = B')
  double equal_a_prime_b = 0.0;        // p(A' = B)
  double unequal_a_prime_b_prime = 0.0;  // p(A' != B')
};

ChshTerms chsh_terms(const Behavior& behavior, const ChshPermutation& perm);

/// p(A=B) + p(A=B') + p(A'=B) + p(A'!=B'); at most 3 for a local model.
double chsh_probability_form(const Behavior& behavior,
                             const ChshPermutation& perm = {});
/// Correlator form; at most 2 for a local model.
double chsh_S(const Behavior& behavior, const ChshPermutation& perm = {});

/// Lower bounds on Bob's joint statistics implied by any compatible joints.
struct Conundrum {
  double q_equal_lower = 0.0;          // q(B = B') >= p(A=B) + p(A=B') - 1
  double q_prime_unequal_lower = 0.0;  // q'(B != B') >= p(A'=B) + p(A'!=B') - 1
  double generalized_rhs = 0.0;        // probability form - 3
  // All four probabilities above 3/4, which pushes both bounds above 1/2.
  bool basic_conundrum = false;
  // generalized_rhs > 0: q(B=B') must differ from q'(B=B').
  bool generalized_conundrum = false;
};

Conundrum conundrum_report(const Behavior& behavior,
                           const ChshPermutation& perm = {});

/// (S - 2) / 2: the least amount by which q(B=B') - q'(B=B') must exceed zero
/// for every compatible pair (q, q').
double gap_lower_bound(const Behavior& behavior,
                       const ChshPermutation& perm = {});

struct ChshReport {
  ChshPermutation permutation;
  ChshTerms terms;
  double probability_form_lhs = 0.0;
  double correlator_S = 0.0;
  double violation = 0.0;  // max(0, S - 2)
  double gap_lower_bound = 0.0;
  Conundrum conundrum;
  bool is_max = false;
};

ChshReport chsh_report(const Behavior& behavior, const ChshPermutation& perm);

/// One report per permutation from enumerate_permutations; the first report
/// attaining the largest S is flagged.
std::vector<ChshReport> all_permutations(const Behavior& behavior);

}  // namespace bellkit

#endif  // BELLKIT_CHSH_H_
