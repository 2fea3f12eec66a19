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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bellkit/errors.h"
#include "bellkit/simplex.h"

namespace bellkit {
namespace {

// For every global index, the behavior entries its deterministic vertex
// hits: one per setting pair, in (x, y) order.
std::vector<std::size_t> vertex_hits(const Scenario& s, const MixedRadix& layout) {
  const int m = s.alice_settings();
  const int n = s.bob_settings();
  const std::size_t per_vertex = static_cast<std::size_t>(m) * n;
  std::vector<std::size_t> hits(layout.size() * per_vertex);
  std::vector<std::size_t> digits(layout.digits());
  for (std::size_t g = 0; g < layout.size(); ++g) {
    layout.decode(g, digits);
    std::size_t* out = &hits[g * per_vertex];
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < n; ++y) {
        *out++ = s.table_offset(x, y) + digits[x] * s.bob_count(y) + digits[m + y];
      }
    }
  }
  return hits;
}

void require_solved(const lp::Solution& solution, const char* what) {
  if (solution.status != lp::Status::optimal) {
    std::ostringstream msg;
    msg << what << ": simplex ended with status " << lp::to_string(solution.status);
    throw LpFailure(msg.str(), solution.phase_one_objective);
  }
}

double max_chsh(const Behavior& behavior) {
  double best = -std::numeric_limits<double>::infinity();
  for (const ChshReport& r : all_permutations(behavior)) {
    best = std::max(best, r.correlator_S);
  }
  return best;
}

}  // namespace

MixedRadix global_layout(const Scenario& scenario) {
  std::vector<std::size_t> radices;
  for (int x = 0; x < scenario.alice_settings(); ++x) {
    radices.push_back(scenario.alice_count(x));
  }
  for (int y = 0; y < scenario.bob_settings(); ++y) {
    radices.push_back(scenario.bob_count(y));
  }
  return MixedRadix(std::move(radices));
}

std::size_t vertex_count(const Scenario& scenario, std::size_t cap) {
  std::size_t count = 1;
  auto multiply = [&](std::size_t k) {
    if (count > cap / k) {
      throw DimensionError("scenario has more than " + std::to_string(cap) +
                           " deterministic vertices");
    }
    count *= k;
  };
  for (int x = 0; x < scenario.alice_settings(); ++x) multiply(scenario.alice_count(x));
  for (int y = 0; y < scenario.bob_settings(); ++y) multiply(scenario.bob_count(y));
  return count;
}

std::vector<DeterministicVertex> enumerate_vertices(const Scenario& scenario,
                                                    std::size_t cap) {
  const std::size_t count = vertex_count(scenario, cap);
  const MixedRadix layout = global_layout(scenario);
  const auto m = static_cast<std::size_t>(scenario.alice_settings());
  std::vector<DeterministicVertex> vertices;
  vertices.reserve(count);
  std::vector<std::size_t> digits(layout.digits());
  for (std::size_t g = 0; g < count; ++g) {
    layout.decode(g, digits);
    DeterministicVertex v;
    v.alice.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(m));
    v.bob.assign(digits.begin() + static_cast<std::ptrdiff_t>(m), digits.end());
    vertices.push_back(std::move(v));
  }
  return vertices;
}

double evaluate(const BellFunctional& functional, const Behavior& behavior) {
  if (functional.coefficients.size() != behavior.entries().size()) {
    throw DimensionError("functional does not match the behavior's scenario");
  }
  double value = 0.0;
  for (std::size_t e = 0; e < functional.coefficients.size(); ++e) {
    value += functional.coefficients[e] * behavior.entries()[e];
  }
  return value;
}

MembershipResult local_membership(const Behavior& behavior, double tol_lp) {
  const Scenario& s = behavior.scenario();
  const std::size_t count = vertex_count(s);
  const MixedRadix layout = global_layout(s);
  const std::size_t per_vertex =
      static_cast<std::size_t>(s.alice_settings()) * s.bob_settings();
  const std::vector<std::size_t> hits = vertex_hits(s, layout);
  const std::size_t entries = s.entry_count();
  std::span<const double> p = behavior.entries();

  MembershipResult result;
  if (s.alice_settings() >= 2 && s.bob_settings() >= 2) {
    result.boundary = std::abs(max_chsh(behavior) - 2.0) <= kBoundaryBand;
  }

  // Direct decomposition: sum_v w_v v = p, sum_v w_v = 1, w >= 0.
  {
    lp::LinearProgram program;
    program.add_variables(count);
    std::vector<std::vector<lp::LinearProgram::Term>> rows(entries);
    for (std::size_t g = 0; g < count; ++g) {
      for (std::size_t h = 0; h < per_vertex; ++h) {
        rows[hits[g * per_vertex + h]].emplace_back(g, 1.0);
      }
    }
    for (std::size_t e = 0; e < entries; ++e) program.add_constraint(rows[e], p[e]);
    std::vector<lp::LinearProgram::Term> norm;
    for (std::size_t g = 0; g < count; ++g) norm.emplace_back(g, 1.0);
    program.add_constraint(norm, 1.0);

    lp::Options options;
    options.feasibility_tol = tol_lp;
    lp::Solution solution = lp::solve(program, options);
    if (solution.status == lp::Status::optimal) {
      result.status = MembershipStatus::inside;
      result.weights = solution.x;
      double total = 0.0;
      for (double w : result.weights) total += w;
      for (double& w : result.weights) w /= total;
      std::vector<double> rebuilt(entries, 0.0);
      for (std::size_t g = 0; g < count; ++g) {
        for (std::size_t h = 0; h < per_vertex; ++h) {
          rebuilt[hits[g * per_vertex + h]] += result.weights[g];
        }
      }
      for (std::size_t e = 0; e < entries; ++e) {
        result.residual = std::max(result.residual, std::abs(rebuilt[e] - p[e]));
      }
      if (result.residual > tol_lp) {
        throw LpFailure("vertex weights do not reproduce the behavior",
                        result.residual);
      }
      return result;
    }
    if (solution.status != lp::Status::infeasible) {
      require_solved(solution, "local membership");
    }
  }

  // Outside. Maximize t such that t p + (1 - t) u is local, u the uniform
  // behavior; the optimal duals give a supporting functional at the exit
  // point.
  std::vector<double> uniform(entries);
  for (int x = 0; x < s.alice_settings(); ++x) {
    for (int y = 0; y < s.bob_settings(); ++y) {
      const std::size_t size = s.alice_count(x) * s.bob_count(y);
      const std::size_t offset = s.table_offset(x, y);
      for (std::size_t i = 0; i < size; ++i) {
        uniform[offset + i] = 1.0 / static_cast<double>(size);
      }
    }
  }
  lp::LinearProgram program;
  program.add_variables(count);
  const std::size_t t = program.add_variable(-1.0);
  const std::size_t slack = program.add_variable(0.0);
  std::vector<std::vector<lp::LinearProgram::Term>> rows(entries);
  for (std::size_t g = 0; g < count; ++g) {
    for (std::size_t h = 0; h < per_vertex; ++h) {
      rows[hits[g * per_vertex + h]].emplace_back(g, 1.0);
    }
  }
  for (std::size_t e = 0; e < entries; ++e) {
    rows[e].emplace_back(t, -(p[e] - uniform[e]));
    program.add_constraint(rows[e], uniform[e]);
  }
  std::vector<lp::LinearProgram::Term> norm;
  for (std::size_t g = 0; g < count; ++g) norm.emplace_back(g, 1.0);
  program.add_constraint(norm, 1.0);
  program.add_constraint({{t, 1.0}, {slack, 1.0}}, 1.0);

  lp::Solution solution = lp::solve(program);
  require_solved(solution, "noise robustness");

  BellFunctional functional;
  functional.coefficients.assign(solution.duals.begin(),
                                 solution.duals.begin() + static_cast<std::ptrdiff_t>(entries));
  double scale = 0.0;
  for (double c : functional.coefficients) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) {
    throw LpFailure("noise robustness produced an empty functional", 0.0);
  }
  for (double& c : functional.coefficients) c /= scale;

  // The classical bound is recomputed over every vertex rather than taken
  // from the dual.
  double bound = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < count; ++g) {
    double value = 0.0;
    for (std::size_t h = 0; h < per_vertex; ++h) {
      value += functional.coefficients[hits[g * per_vertex + h]];
    }
    bound = std::max(bound, value);
  }
  functional.classical_bound = bound;
  functional.value = evaluate(functional, behavior);

  result.status = MembershipStatus::outside;
  result.residual = functional.value - functional.classical_bound;
  result.noise_robustness = std::clamp(solution.x[t], 0.0, 1.0);
  if (!(result.residual > tol_lp)) {
    throw LpFailure("separating functional does not clear the classical bound",
                    result.residual);
  }
  result.certificate = std::move(functional);
  return result;
}

GlobalJoint::GlobalJoint(Scenario scenario, std::vector<double> table)
    : scenario_(std::move(scenario)),
      layout_(global_layout(scenario_)),
      table_(std::move(table)) {
  if (table_.size() != layout_.size()) {
    throw DimensionError("global joint table size does not match the scenario");
  }
}

std::vector<double> GlobalJoint::pair_marginal(int j, int k) const {
  scenario_.check_settings(j, k);
  const std::size_t alice_digit = static_cast<std::size_t>(j);
  const std::size_t bob_digit = static_cast<std::size_t>(scenario_.alice_settings() + k);
  const std::size_t cols = scenario_.bob_count(k);
  std::vector<double> out(scenario_.alice_count(j) * cols, 0.0);
  for (std::size_t g = 0; g < table_.size(); ++g) {
    out[layout_.digit(g, alice_digit) * cols + layout_.digit(g, bob_digit)] += table_[g];
  }
  return out;
}

Behavior GlobalJoint::induced_behavior() const {
  std::vector<double> entries;
  entries.reserve(scenario_.entry_count());
  for (int x = 0; x < scenario_.alice_settings(); ++x) {
    for (int y = 0; y < scenario_.bob_settings(); ++y) {
      std::vector<double> marginal = pair_marginal(x, y);
      entries.insert(entries.end(), marginal.begin(), marginal.end());
    }
  }
  return Behavior(scenario_, std::move(entries));
}

std::vector<CompatibleJoint> GlobalJoint::compatible_joints() const {
  const int m = scenario_.alice_settings();
  const int n = scenario_.bob_settings();
  std::vector<CompatibleJoint> joints;
  std::vector<std::size_t> digits(layout_.digits());
  for (int j = 0; j < m; ++j) {
    MixedRadix layout = compatible_layout(scenario_, j);
    std::vector<double> table(layout.size(), 0.0);
    std::vector<std::size_t> local(layout.digits());
    for (std::size_t g = 0; g < table_.size(); ++g) {
      layout_.decode(g, digits);
      local[0] = digits[j];
      for (int k = 0; k < n; ++k) local[1 + k] = digits[m + k];
      table[layout.encode(local)] += table_[g];
    }
    joints.emplace_back(j, std::move(layout), std::move(table));
  }
  return joints;
}

GlobalJoint global_joint_from_weights(const Scenario& scenario,
                                      std::span<const double> weights) {
  return GlobalJoint(scenario, std::vector<double>(weights.begin(), weights.end()));
}

double invariance_deviation(std::span<const CompatibleJoint> joints) {
  double worst = 0.0;
  std::vector<std::vector<double>> marginals;
  for (const auto& joint : joints) marginals.push_back(joint.bob_marginal());
  for (std::size_t i = 0; i < marginals.size(); ++i) {
    for (std::size_t j = i + 1; j < marginals.size(); ++j) {
      if (marginals[i].size() != marginals[j].size()) {
        throw DimensionError("compatible joints cover different Bob scenarios");
      }
      double tv = 0.0;
      for (std::size_t b = 0; b < marginals[i].size(); ++b) {
        tv += std::abs(marginals[i][b] - marginals[j][b]);
      }
      worst = std::max(worst, 0.5 * tv);
    }
  }
  return worst;
}

GlobalJoint build_global_joint(std::span<const CompatibleJoint> joints,
                               const Behavior& behavior, double tol_inv) {
  const Scenario& s = behavior.scenario();
  const int m = s.alice_settings();
  const int n = s.bob_settings();
  if (joints.size() != static_cast<std::size_t>(m)) {
    throw DimensionError("need one compatible joint per Alice setting");
  }
  for (int j = 0; j < m; ++j) {
    if (joints[j].alice_setting() != j ||
        !(joints[j].layout() == compatible_layout(s, j))) {
      throw DimensionError("compatible joint " + std::to_string(j) +
                           " does not match the scenario");
    }
    CompatibilityCheck check = verify_compatibility(joints[j], behavior, kTolNorm);
    if (!check.compatible) {
      std::ostringstream msg;
      msg << "compatible joint " << j << " misses the measured tables by "
          << check.max_deviation;
      throw CompatibilityError(msg.str());
    }
  }
  const double deviation = invariance_deviation(joints);
  if (deviation > tol_inv) {
    std::ostringstream msg;
    msg << "Bob-marginals of the compatible joints differ by " << deviation
        << " in total variation (tolerance " << tol_inv << ")";
    throw InvarianceError(msg.str(), deviation);
  }

  const std::vector<double> shared = joints[0].bob_marginal();
  const MixedRadix layout = global_layout(s);
  const MixedRadix bobs = bob_layout(s);
  std::vector<double> table(layout.size(), 0.0);
  std::vector<std::size_t> digits(layout.digits());
  std::vector<std::size_t> local(static_cast<std::size_t>(n) + 1);
  for (std::size_t g = 0; g < table.size(); ++g) {
    layout.decode(g, digits);
    std::span<const std::size_t> bob_digits(digits.data() + m, static_cast<std::size_t>(n));
    const double q_b = shared[bobs.encode(bob_digits)];
    if (q_b <= 0.0) continue;
    // prod_j q_j(a_j, b) / q(b)^(m-1) = q(b) prod_j q_j(a_j | b).
    double value = q_b;
    for (int j = 0; j < m; ++j) {
      local[0] = digits[j];
      std::copy(bob_digits.begin(), bob_digits.end(), local.begin() + 1);
      value *= joints[j].table()[joints[j].layout().encode(local)] / q_b;
    }
    table[g] = value;
  }
  return GlobalJoint(s, std::move(table));
}

namespace {

// Variables q(a, b, b') for one Alice setting and two Bob settings,
// constrained to reproduce p(a, b | x, y) and p(a, b' | x, y2).
struct TripleBlock {
  std::size_t first = 0;
  std::size_t alice = 0, bob = 0, bob_prime = 0;
  std::size_t var(std::size_t a, std::size_t b, std::size_t b2) const {
    return first + (a * bob + b) * bob_prime + b2;
  }
};

TripleBlock add_triple_block(lp::LinearProgram& program, const Behavior& behavior,
                             int x, int y, int y2) {
  const Scenario& s = behavior.scenario();
  TripleBlock block;
  block.alice = s.alice_count(x);
  block.bob = s.bob_count(y);
  block.bob_prime = s.bob_count(y2);
  block.first = program.add_variables(block.alice * block.bob * block.bob_prime);
  for (std::size_t a = 0; a < block.alice; ++a) {
    for (std::size_t b = 0; b < block.bob; ++b) {
      std::vector<lp::LinearProgram::Term> row;
      for (std::size_t b2 = 0; b2 < block.bob_prime; ++b2) {
        row.emplace_back(block.var(a, b, b2), 1.0);
      }
      program.add_constraint(row, behavior.prob(x, y, a, b));
    }
    for (std::size_t b2 = 0; b2 < block.bob_prime; ++b2) {
      std::vector<lp::LinearProgram::Term> row;
      for (std::size_t b = 0; b < block.bob; ++b) {
        row.emplace_back(block.var(a, b, b2), 1.0);
      }
      program.add_constraint(row, behavior.prob(x, y2, a, b2));
    }
  }
  return block;
}

// Alice's marginal for setting x must agree between Bob settings y and y2.
double selected_signaling(const Behavior& behavior, int x, int y, int y2) {
  std::vector<double> first = alice_marginal(behavior, x, y);
  std::vector<double> second = alice_marginal(behavior, x, y2);
  double worst = 0.0;
  for (std::size_t a = 0; a < first.size(); ++a) {
    worst = std::max(worst, std::abs(first[a] - second[a]));
  }
  return worst;
}

lp::Options pair_options(const Behavior& behavior, const ChshPermutation& perm,
                         double tol_ns) {
  check_permutation(behavior.scenario(), perm);
  const double deviation =
      std::max(selected_signaling(behavior, perm.alice, perm.bob, perm.bob_prime),
               selected_signaling(behavior, perm.alice_prime, perm.bob, perm.bob_prime));
  if (deviation > tol_ns) {
    std::ostringstream msg;
    msg << "Alice's marginals move with Bob's setting by " << deviation
        << "; compatible joints do not exist";
    throw NoSignalingError(msg.str(), deviation);
  }
  lp::Options options;
  // The marginal constraints are consistent only up to the signaling
  // deviation the caller tolerates.
  const std::size_t outcomes = behavior.scenario().alice_count(perm.alice) +
                               behavior.scenario().alice_count(perm.alice_prime);
  options.feasibility_tol = kTolLp + 2.0 * static_cast<double>(outcomes) * deviation;
  return options;
}

}  // namespace

double min_invariance_gap(const Behavior& behavior, const ChshPermutation& perm,
                          double tol_ns) {
  const lp::Options options = pair_options(behavior, perm, tol_ns);
  const Scenario& s = behavior.scenario();
  lp::LinearProgram program;
  TripleBlock q = add_triple_block(program, behavior, perm.alice, perm.bob, perm.bob_prime);
  TripleBlock q_prime =
      add_triple_block(program, behavior, perm.alice_prime, perm.bob, perm.bob_prime);
  const OutcomeSet& bob = s.bob_outcomes(perm.bob);
  const OutcomeSet& bob_prime = s.bob_outcomes(perm.bob_prime);
  for (std::size_t b = 0; b < bob.size(); ++b) {
    for (std::size_t b2 = 0; b2 < bob_prime.size(); ++b2) {
      if (bob[b] != bob_prime[b2]) continue;
      for (std::size_t a = 0; a < q.alice; ++a) program.set_cost(q.var(a, b, b2), 1.0);
      for (std::size_t a = 0; a < q_prime.alice; ++a) {
        program.set_cost(q_prime.var(a, b, b2), -1.0);
      }
    }
  }
  lp::Solution solution = lp::solve(program, options);
  require_solved(solution, "minimum invariance gap");
  return solution.objective;
}

double min_tv_separation(const Behavior& behavior, const ChshPermutation& perm,
                         double tol_ns) {
  const lp::Options options = pair_options(behavior, perm, tol_ns);
  lp::LinearProgram program;
  TripleBlock q = add_triple_block(program, behavior, perm.alice, perm.bob, perm.bob_prime);
  TripleBlock q_prime =
      add_triple_block(program, behavior, perm.alice_prime, perm.bob, perm.bob_prime);
  // t(b, b') >= |q(b, b') - q'(b, b')| through two slacks each.
  for (std::size_t b = 0; b < q.bob; ++b) {
    for (std::size_t b2 = 0; b2 < q.bob_prime; ++b2) {
      const std::size_t t = program.add_variable(0.5);
      const std::size_t above = program.add_variable();
      const std::size_t below = program.add_variable();
      std::vector<lp::LinearProgram::Term> difference;
      for (std::size_t a = 0; a < q.alice; ++a) difference.emplace_back(q.var(a, b, b2), 1.0);
      for (std::size_t a = 0; a < q_prime.alice; ++a) {
        difference.emplace_back(q_prime.var(a, b, b2), -1.0);
      }
      // t - d - above = 0
      std::vector<lp::LinearProgram::Term> row{{t, 1.0}, {above, -1.0}};
      for (const auto& [v, c] : difference) row.emplace_back(v, -c);
      program.add_constraint(row, 0.0);
      // t + d - below = 0
      row = {{t, 1.0}, {below, -1.0}};
      for (const auto& [v, c] : difference) row.emplace_back(v, c);
      program.add_constraint(row, 0.0);
    }
  }
  lp::Solution solution = lp::solve(program, options);
  require_solved(solution, "minimum total-variation separation");
  return solution.objective;
}

SignedJoint signed_invariant_joint(const Behavior& behavior, double tol_lp) {
  const Scenario& s = behavior.scenario();
  const std::size_t count = vertex_count(s);
  const MixedRadix layout = global_layout(s);
  const std::size_t per_vertex =
      static_cast<std::size_t>(s.alice_settings()) * s.bob_settings();
  const std::vector<std::size_t> hits = vertex_hits(s, layout);
  const std::size_t entries = s.entry_count();

  // q = positive - negative, minimizing the negative mass.
  lp::LinearProgram program;
  const std::size_t positive = program.add_variables(count, 0.0);
  const std::size_t negative = program.add_variables(count, 1.0);
  std::vector<std::vector<lp::LinearProgram::Term>> rows(entries);
  for (std::size_t g = 0; g < count; ++g) {
    for (std::size_t h = 0; h < per_vertex; ++h) {
      auto& row = rows[hits[g * per_vertex + h]];
      row.emplace_back(positive + g, 1.0);
      row.emplace_back(negative + g, -1.0);
    }
  }
  for (std::size_t e = 0; e < entries; ++e) {
    program.add_constraint(rows[e], behavior.entries()[e]);
  }
  lp::Options options;
  options.feasibility_tol = tol_lp;
  lp::Solution solution = lp::solve(program, options);
  if (solution.status == lp::Status::infeasible) {
    const ValidationReport report = check_no_signaling(behavior, tol_lp);
    throw NoSignalingError(
        "no signed joint reproduces the behavior; it signals",
        std::max(report.max_deviation_b_to_a, report.max_deviation_a_to_b));
  }
  require_solved(solution, "signed invariant joint");

  SignedJoint joint;
  joint.table.resize(count);
  for (std::size_t g = 0; g < count; ++g) {
    joint.table[g] = solution.x[positive + g] - solution.x[negative + g];
    joint.negativity += std::max(0.0, -joint.table[g]);
  }
  return joint;
}

}  // namespace bellkit
