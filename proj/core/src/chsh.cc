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

#include "bellkit/chsh.h"

#include <algorithm>
#include <sstream>

#include "bellkit/errors.h"

namespace bellkit {

std::string ChshPermutation::label() const {
  std::ostringstream out;
  out << "A=" << alice << " A'=" << alice_prime << " B=" << bob
      << " B'=" << bob_prime;
  if (flipped) out << " flip";
  return out.str();
}

bool flip_supported(const Scenario& scenario, const ChshPermutation& perm) {
  const OutcomeSet& a = scenario.alice_outcomes(perm.alice);
  const OutcomeSet& a_prime = scenario.alice_outcomes(perm.alice_prime);
  if (a.size() != 2 || a_prime.size() != 2) return false;
  auto same_pair = [&](const OutcomeSet& s) {
    return (s[0] == a[0] && s[1] == a[1]) || (s[0] == a[1] && s[1] == a[0]);
  };
  if (!same_pair(a_prime)) return false;
  auto inside_pair = [&](const OutcomeSet& s) {
    return std::all_of(s.begin(), s.end(),
                       [&](Label l) { return l == a[0] || l == a[1]; });
  };
  return inside_pair(scenario.bob_outcomes(perm.bob)) &&
         inside_pair(scenario.bob_outcomes(perm.bob_prime));
}

void check_permutation(const Scenario& scenario, const ChshPermutation& perm) {
  const int m = scenario.alice_settings();
  const int n = scenario.bob_settings();
  auto in_range = [](int v, int count) { return v >= 0 && v < count; };
  if (!in_range(perm.alice, m) || !in_range(perm.alice_prime, m) ||
      !in_range(perm.bob, n) || !in_range(perm.bob_prime, n)) {
    throw DimensionError("permutation " + perm.label() +
                         " out of range for the scenario");
  }
  if (perm.alice == perm.alice_prime || perm.bob == perm.bob_prime) {
    throw DimensionError("permutation " + perm.label() +
                         " must use two distinct settings per lab");
  }
  if (perm.flipped && !flip_supported(scenario, perm)) {
    throw DimensionError("permutation " + perm.label() +
                         " flips outcomes that are not a shared binary pair");
  }
}

std::vector<ChshPermutation> enumerate_permutations(const Scenario& scenario) {
  std::vector<ChshPermutation> out;
  const int m = scenario.alice_settings();
  const int n = scenario.bob_settings();
  for (int x = 0; x < m; ++x) {
    for (int x2 = 0; x2 < m; ++x2) {
      if (x2 == x) continue;
      for (int y = 0; y < n; ++y) {
        for (int y2 = 0; y2 < n; ++y2) {
          if (y2 == y) continue;
          ChshPermutation perm{x, x2, y, y2, false};
          out.push_back(perm);
          perm.flipped = true;
          if (flip_supported(scenario, perm)) out.push_back(perm);
        }
      }
    }
  }
  return out;
}

ChshTerms chsh_terms(const Behavior& behavior, const ChshPermutation& perm) {
  check_permutation(behavior.scenario(), perm);
  // For a flipped permutation p(flip(A) = B) = 1 - p(A = B) on the binary
  // labels involved.
  auto eq = [&](int x, int y) {
    const double p = equality_probability(behavior, x, y);
    return perm.flipped ? 1.0 - p : p;
  };
  ChshTerms t;
  t.equal_ab = eq(perm.alice, perm.bob);
  t.equal_ab_prime = eq(perm.alice, perm.bob_prime);
  t.equal_a_prime_b = eq(perm.alice_prime, perm.bob);
  t.unequal_a_prime_b_prime = 1.0 - eq(perm.alice_prime, perm.bob_prime);
  return t;
}

namespace {

double probability_form(const ChshTerms& t) {
  return t.equal_ab + t.equal_ab_prime + t.equal_a_prime_b +
         t.unequal_a_prime_b_prime;
}

double correlator_form(const ChshTerms& t) {
  // E = p(=) - p(!=); the last term enters with a minus sign, and
  // -E(A',B') = p(A'!=B') - p(A'=B').
  auto e = [](double p_equal) { return 2.0 * p_equal - 1.0; };
  return e(t.equal_ab) + e(t.equal_ab_prime) + e(t.equal_a_prime_b) +
         e(t.unequal_a_prime_b_prime);
}

Conundrum conundrum_from(const ChshTerms& t) {
  Conundrum c;
  c.q_equal_lower = t.equal_ab + t.equal_ab_prime - 1.0;
  c.q_prime_unequal_lower = t.equal_a_prime_b + t.unequal_a_prime_b_prime - 1.0;
  c.generalized_rhs = probability_form(t) - 3.0;
  c.basic_conundrum = t.equal_ab > 0.75 && t.equal_ab_prime > 0.75 &&
                      t.equal_a_prime_b > 0.75 &&
                      t.unequal_a_prime_b_prime > 0.75;
  c.generalized_conundrum = c.generalized_rhs > 0.0;
  return c;
}

}  // namespace

double chsh_probability_form(const Behavior& behavior,
                             const ChshPermutation& perm) {
  return probability_form(chsh_terms(behavior, perm));
}

double chsh_S(const Behavior& behavior, const ChshPermutation& perm) {
  return correlator_form(chsh_terms(behavior, perm));
}

Conundrum conundrum_report(const Behavior& behavior,
                           const ChshPermutation& perm) {
  return conundrum_from(chsh_terms(behavior, perm));
}

double gap_lower_bound(const Behavior& behavior, const ChshPermutation& perm) {
  return 0.5 * (chsh_S(behavior, perm) - 2.0);
}

ChshReport chsh_report(const Behavior& behavior, const ChshPermutation& perm) {
  ChshReport r;
  r.permutation = perm;
  r.terms = chsh_terms(behavior, perm);
  r.probability_form_lhs = probability_form(r.terms);
  r.correlator_S = correlator_form(r.terms);
  r.violation = std::max(0.0, r.correlator_S - 2.0);
  r.gap_lower_bound = 0.5 * (r.correlator_S - 2.0);
  r.conundrum = conundrum_from(r.terms);
  return r;
}

std::vector<ChshReport> all_permutations(const Behavior& behavior) {
  std::vector<ChshReport> reports;
  for (const ChshPermutation& perm :
       enumerate_permutations(behavior.scenario())) {
    reports.push_back(chsh_report(behavior, perm));
  }
  if (!reports.empty()) {
    auto best = std::max_element(reports.begin(), reports.end(),
                                 [](const ChshReport& a, const ChshReport& b) {
                                   return a.correlator_S < b.correlator_S;
                                 });
    best->is_max = true;
  }
  return reports;
}

}  // namespace bellkit
