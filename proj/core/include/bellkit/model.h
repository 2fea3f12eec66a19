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

#ifndef BELLKIT_MODEL_H_
#define BELLKIT_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bellkit {

/// Outcome labels are integers. Equality across the two labs means equal
/// labels, so disjoint label sets never agree.
using Label = int;
using OutcomeSet = std::vector<Label>;

/// Tolerance for normalization of exact (analytic) probability tables.
inline constexpr double kTolNorm = 1e-9;

/// Setting counts and outcome labels for both labs.
class Scenario {
 public:
  /// Throws DimensionError on an empty lab, an empty outcome set, or
  /// repeated labels within one set.
  Scenario(std::vector<OutcomeSet> alice_outcomes,
           std::vector<OutcomeSet> bob_outcomes);

  /// m Alice settings and n Bob settings sharing the same label set.
  static Scenario uniform(int alice_settings, int bob_settings,
                          const OutcomeSet& labels);
  /// Labels {0, 1} everywhere.
  static Scenario binary(int alice_settings = 2, int bob_settings = 2);

  int alice_settings() const { return static_cast<int>(alice_.size()); }
  int bob_settings() const { return static_cast<int>(bob_.size()); }
  const OutcomeSet& alice_outcomes(int x) const;
  const OutcomeSet& bob_outcomes(int y) const;
  std::size_t alice_count(int x) const { return alice_outcomes(x).size(); }
  std::size_t bob_count(int y) const { return bob_outcomes(y).size(); }

  std::optional<std::size_t> alice_index(int x, Label label) const;
  std::optional<std::size_t> bob_index(int y, Label label) const;

  // Flat layout of a behavior: tables ordered by (x, y), each row-major in
  // (alice outcome index, bob outcome index).
  std::size_t table_offset(int x, int y) const;
  std::size_t entry_count() const { return entry_count_; }

  /// Throws DimensionError unless 0 <= x < m and 0 <= y < n.
  void check_settings(int x, int y) const;

  bool operator==(const Scenario& other) const {
    return alice_ == other.alice_ && bob_ == other.bob_;
  }

 private:
  std::vector<OutcomeSet> alice_;
  std::vector<OutcomeSet> bob_;
  std::vector<std::size_t> offsets_;
  std::size_t entry_count_ = 0;
};

/// The measured joint distributions p(a,b|x,y), one dense table per setting
/// pair. Immutable after construction.
class Behavior {
 public:
  /// `entries` follows Scenario::table_offset. Entries down to -tol are
  /// clamped to zero and each table is rescaled to sum to one when it is
  /// within `tol` of one; otherwise NormalizationError is thrown.
  Behavior(Scenario scenario, std::vector<double> entries,
           double tol = kTolNorm);

  /// Builds the table from p(x, y, alice_index, bob_index).
  static Behavior from_function(
      Scenario scenario,
      const std::function<double(int, int, std::size_t, std::size_t)>& p,
      double tol = kTolNorm);

  const Scenario& scenario() const { return scenario_; }
  double prob(int x, int y, std::size_t a, std::size_t b) const {
    return entries_[scenario_.table_offset(x, y) +
                    a * scenario_.bob_count(y) + b];
  }
  std::span<const double> table(int x, int y) const;
  std::span<const double> entries() const { return entries_; }

 private:
  Scenario scenario_;
  std::vector<double> entries_;
};

/// Convex combination weight * first + (1 - weight) * second.
Behavior mixture(const Behavior& first, const Behavior& second,
                 double weight);

/// p(A_x = B_y): the mass on cells whose two labels coincide.
double equality_probability(const Behavior& behavior, int x, int y);

/// E(A_x, B_y) = p(A_x = B_y) - p(A_x != B_y) = 2 p(A_x = B_y) - 1.
double correlation(const Behavior& behavior, int x, int y);

/// Outcome counts per setting pair, with binomial error estimates.
class EmpiricalBehavior {
 public:
  EmpiricalBehavior(Scenario scenario, std::vector<std::uint64_t> counts);

  const Scenario& scenario() const { return scenario_; }
  std::uint64_t count(int x, int y, std::size_t a, std::size_t b) const {
    return counts_[scenario_.table_offset(x, y) +
                   a * scenario_.bob_count(y) + b];
  }
  std::span<const std::uint64_t> counts() const { return counts_; }

  /// N_xy, the number of runs recorded for the setting pair.
  std::uint64_t runs(int x, int y) const;
  bool has_runs(int x, int y) const { return runs(x, y) > 0; }
  /// True when every setting pair has at least one run.
  bool complete() const;

  /// Relative frequency; 0 for a pair with no runs.
  double frequency(int x, int y, std::size_t a, std::size_t b) const;
  /// sqrt(f (1 - f) / N_xy); 0 for a pair with no runs.
  double standard_error(int x, int y, std::size_t a, std::size_t b) const;

  /// Frequencies as a Behavior. Throws DimensionError when a pair has no
  /// runs.
  Behavior frequencies() const;

 private:
  Scenario scenario_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> runs_;
};

/// Outcome of the normalization and no-signaling checks.
struct ValidationReport {
  bool normalized = true;
  double normalization_error = 0.0;
  // Bob's setting must not move Alice's marginals, and vice versa.
  bool no_signaling_b_to_a = true;
  double max_deviation_b_to_a = 0.0;
  bool no_signaling_a_to_b = true;
  double max_deviation_a_to_b = 0.0;
  double tolerance = 0.0;
  // Set only by the count-based check; deviations are then also reported as
  // z-scores against the binomial standard error.
  bool z_score_mode = false;
  double max_z_b_to_a = 0.0;
  double max_z_a_to_b = 0.0;

  bool no_signaling() const {
    return no_signaling_b_to_a && no_signaling_a_to_b;
  }
};

}  // namespace bellkit

#endif  // BELLKIT_MODEL_H_
