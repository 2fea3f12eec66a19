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

#include "bellkit/nosignal.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bellkit/errors.h"
#include "json.hpp"

namespace bellkit {

std::vector<double> alice_marginal(const Behavior& behavior, int x, int y) {
  const Scenario& s = behavior.scenario();
  s.check_settings(x, y);
  std::vector<double> marginal(s.alice_count(x), 0.0);
  for (std::size_t a = 0; a < s.alice_count(x); ++a) {
    for (std::size_t b = 0; b < s.bob_count(y); ++b) {
      marginal[a] += behavior.prob(x, y, a, b);
    }
  }
  return marginal;
}

std::vector<double> bob_marginal(const Behavior& behavior, int x, int y) {
  const Scenario& s = behavior.scenario();
  s.check_settings(x, y);
  std::vector<double> marginal(s.bob_count(y), 0.0);
  for (std::size_t a = 0; a < s.alice_count(x); ++a) {
    for (std::size_t b = 0; b < s.bob_count(y); ++b) {
      marginal[b] += behavior.prob(x, y, a, b);
    }
  }
  return marginal;
}

ValidationReport check_no_signaling(const Behavior& behavior, double tol) {
  const Scenario& s = behavior.scenario();
  const int m = s.alice_settings();
  const int n = s.bob_settings();
  ValidationReport report;
  report.tolerance = tol;

  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < n; ++y) {
      double sum = 0.0;
      for (double p : behavior.table(x, y)) sum += p;
      report.normalization_error =
          std::max(report.normalization_error, std::abs(sum - 1.0));
    }
  }
  report.normalized = report.normalization_error <= tol;

  // Largest difference over all pairs of remote settings.
  for (int x = 0; x < m; ++x) {
    std::vector<std::vector<double>> marginals;
    for (int y = 0; y < n; ++y) marginals.push_back(alice_marginal(behavior, x, y));
    for (int y = 0; y < n; ++y) {
      for (int y2 = y + 1; y2 < n; ++y2) {
        for (std::size_t a = 0; a < marginals[y].size(); ++a) {
          report.max_deviation_b_to_a =
              std::max(report.max_deviation_b_to_a,
                       std::abs(marginals[y][a] - marginals[y2][a]));
        }
      }
    }
  }
  for (int y = 0; y < n; ++y) {
    std::vector<std::vector<double>> marginals;
    for (int x = 0; x < m; ++x) marginals.push_back(bob_marginal(behavior, x, y));
    for (int x = 0; x < m; ++x) {
      for (int x2 = x + 1; x2 < m; ++x2) {
        for (std::size_t b = 0; b < marginals[x].size(); ++b) {
          report.max_deviation_a_to_b =
              std::max(report.max_deviation_a_to_b,
                       std::abs(marginals[x][b] - marginals[x2][b]));
        }
      }
    }
  }
  report.no_signaling_b_to_a = report.max_deviation_b_to_a <= tol;
  report.no_signaling_a_to_b = report.max_deviation_a_to_b <= tol;
  return report;
}

namespace {

struct Deviation {
  double difference = 0.0;
  double z = 0.0;
};

// Two marginal estimates f1 (from n1 runs) and f2 (from n2 runs).
Deviation compare_estimates(double f1, double n1, double f2, double n2) {
  Deviation d;
  d.difference = std::abs(f1 - f2);
  const double se = std::sqrt(f1 * (1.0 - f1) / n1 + f2 * (1.0 - f2) / n2);
  if (se > 0.0) {
    d.z = d.difference / se;
  } else if (d.difference > 0.0) {
    d.z = std::numeric_limits<double>::infinity();
  }
  return d;
}

}  // namespace

ValidationReport check_no_signaling(const EmpiricalBehavior& empirical,
                                    double z_threshold) {
  const Scenario& s = empirical.scenario();
  const int m = s.alice_settings();
  const int n = s.bob_settings();
  ValidationReport report;
  report.tolerance = z_threshold;
  report.z_score_mode = true;

  auto alice_freq = [&](int x, int y, std::size_t a) {
    std::uint64_t c = 0;
    for (std::size_t b = 0; b < s.bob_count(y); ++b) c += empirical.count(x, y, a, b);
    return static_cast<double>(c) / static_cast<double>(empirical.runs(x, y));
  };
  auto bob_freq = [&](int x, int y, std::size_t b) {
    std::uint64_t c = 0;
    for (std::size_t a = 0; a < s.alice_count(x); ++a) c += empirical.count(x, y, a, b);
    return static_cast<double>(c) / static_cast<double>(empirical.runs(x, y));
  };

  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!empirical.has_runs(x, y)) continue;
      for (int y2 = y + 1; y2 < n; ++y2) {
        if (!empirical.has_runs(x, y2)) continue;
        for (std::size_t a = 0; a < s.alice_count(x); ++a) {
          Deviation d = compare_estimates(
              alice_freq(x, y, a), static_cast<double>(empirical.runs(x, y)),
              alice_freq(x, y2, a), static_cast<double>(empirical.runs(x, y2)));
          report.max_deviation_b_to_a = std::max(report.max_deviation_b_to_a, d.difference);
          report.max_z_b_to_a = std::max(report.max_z_b_to_a, d.z);
        }
      }
    }
  }
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < m; ++x) {
      if (!empirical.has_runs(x, y)) continue;
      for (int x2 = x + 1; x2 < m; ++x2) {
        if (!empirical.has_runs(x2, y)) continue;
        for (std::size_t b = 0; b < s.bob_count(y); ++b) {
          Deviation d = compare_estimates(
              bob_freq(x, y, b), static_cast<double>(empirical.runs(x, y)),
              bob_freq(x2, y, b), static_cast<double>(empirical.runs(x2, y)));
          report.max_deviation_a_to_b = std::max(report.max_deviation_a_to_b, d.difference);
          report.max_z_a_to_b = std::max(report.max_z_a_to_b, d.z);
        }
      }
    }
  }
  report.no_signaling_b_to_a = report.max_z_b_to_a <= z_threshold;
  report.no_signaling_a_to_b = report.max_z_a_to_b <= z_threshold;
  return report;
}

CompatibleJoint::CompatibleJoint(int alice_setting, MixedRadix layout,
                                 std::vector<double> table)
    : alice_setting_(alice_setting),
      layout_(std::move(layout)),
      table_(std::move(table)) {
  if (layout_.digits() < 2) {
    throw DimensionError("a compatible joint needs Alice and at least one Bob digit");
  }
  if (table_.size() != layout_.size()) {
    throw DimensionError("compatible joint table size does not match its layout");
  }
}

std::vector<double> CompatibleJoint::pair_marginal(int k) const {
  if (k < 0 || k >= bob_settings()) {
    throw DimensionError("Bob setting " + std::to_string(k) + " out of range");
  }
  const std::size_t bob_digit = static_cast<std::size_t>(k) + 1;
  const std::size_t cols = layout_.radix(bob_digit);
  std::vector<double> out(layout_.radix(0) * cols, 0.0);
  for (std::size_t i = 0; i < table_.size(); ++i) {
    out[layout_.digit(i, 0) * cols + layout_.digit(i, bob_digit)] += table_[i];
  }
  return out;
}

std::vector<double> CompatibleJoint::bob_marginal() const {
  // Alice is the most significant digit, so the Bob tuple index is the
  // remainder modulo the Bob block size.
  const std::size_t block = layout_.size() / layout_.radix(0);
  std::vector<double> out(block, 0.0);
  for (std::size_t i = 0; i < table_.size(); ++i) out[i % block] += table_[i];
  return out;
}

MixedRadix compatible_layout(const Scenario& scenario, int j) {
  std::vector<std::size_t> radices{scenario.alice_count(j)};
  for (int k = 0; k < scenario.bob_settings(); ++k) {
    radices.push_back(scenario.bob_count(k));
  }
  return MixedRadix(std::move(radices));
}

MixedRadix bob_layout(const Scenario& scenario) {
  std::vector<std::size_t> radices;
  for (int k = 0; k < scenario.bob_settings(); ++k) {
    radices.push_back(scenario.bob_count(k));
  }
  return MixedRadix(std::move(radices));
}

CompatibleJoint build_compatible_joint(const Behavior& behavior, int j,
                                       double tol_ns) {
  const Scenario& s = behavior.scenario();
  s.check_settings(j, 0);
  const int n = s.bob_settings();

  // Alice's marginal for setting j must not depend on Bob's setting.
  std::vector<double> p_a = alice_marginal(behavior, j, 0);
  double deviation = 0.0;
  for (int k = 1; k < n; ++k) {
    std::vector<double> other = alice_marginal(behavior, j, k);
    for (std::size_t a = 0; a < p_a.size(); ++a) {
      deviation = std::max(deviation, std::abs(other[a] - p_a[a]));
    }
  }
  if (deviation > tol_ns) {
    std::ostringstream msg;
    msg << "Alice setting " << j << " marginals vary with Bob's setting by "
        << deviation << " (tolerance " << tol_ns << ")";
    throw NoSignalingError(msg.str(), deviation);
  }

  MixedRadix layout = compatible_layout(s, j);
  std::vector<double> table(layout.size(), 0.0);
  std::vector<std::size_t> digits(layout.digits());
  for (std::size_t i = 0; i < table.size(); ++i) {
    layout.decode(i, digits);
    const double marginal = p_a[digits[0]];
    if (marginal <= 0.0) continue;
    // prod_k p(a, b_k) / p(a)^(n-1) = p(a) prod_k p(b_k | a).
    double value = marginal;
    for (int k = 0; k < n; ++k) {
      value *= behavior.prob(j, k, digits[0], digits[1 + k]) / marginal;
    }
    table[i] = value;
  }
  return CompatibleJoint(j, std::move(layout), std::move(table));
}

CompatibilityCheck verify_compatibility(const CompatibleJoint& joint,
                                        const Behavior& behavior, double tol) {
  const Scenario& s = behavior.scenario();
  const int j = joint.alice_setting();
  if (j < 0 || j >= s.alice_settings() ||
      !(joint.layout() == compatible_layout(s, j))) {
    throw DimensionError("compatible joint does not match the behavior's scenario");
  }
  CompatibilityCheck check;
  double total = 0.0;
  for (double q : joint.table()) {
    total += q;
    if (q < 0.0) check.max_deviation = std::max(check.max_deviation, -q);
  }
  check.max_deviation = std::max(check.max_deviation, std::abs(total - 1.0));
  for (int k = 0; k < s.bob_settings(); ++k) {
    std::vector<double> marginal = joint.pair_marginal(k);
    std::span<const double> measured = behavior.table(j, k);
    for (std::size_t i = 0; i < marginal.size(); ++i) {
      check.max_deviation =
          std::max(check.max_deviation, std::abs(marginal[i] - measured[i]));
    }
  }
  check.compatible = check.max_deviation <= tol;
  return check;
}

Behavior induced_behavior(std::span<const CompatibleJoint> joints,
                          const Scenario& scenario) {
  if (joints.size() != static_cast<std::size_t>(scenario.alice_settings())) {
    throw DimensionError("need one compatible joint per Alice setting");
  }
  std::vector<double> entries;
  entries.reserve(scenario.entry_count());
  for (int x = 0; x < scenario.alice_settings(); ++x) {
    if (joints[x].alice_setting() != x ||
        !(joints[x].layout() == compatible_layout(scenario, x))) {
      throw DimensionError("compatible joint " + std::to_string(x) +
                           " does not match the scenario");
    }
    for (int y = 0; y < scenario.bob_settings(); ++y) {
      std::vector<double> marginal = joints[x].pair_marginal(y);
      entries.insert(entries.end(), marginal.begin(), marginal.end());
    }
  }
  return Behavior(scenario, std::move(entries));
}

std::string compatible_joint_json(const CompatibleJoint& joint,
                                  const Scenario& scenario) {
  using nlohmann::ordered_json;
  const int j = joint.alice_setting();
  ordered_json doc;
  doc["j"] = j;
  ordered_json entries = ordered_json::array();
  std::vector<std::size_t> digits(joint.layout().digits());
  for (std::size_t i = 0; i < joint.table().size(); ++i) {
    if (joint.table()[i] == 0.0) continue;
    joint.layout().decode(i, digits);
    ordered_json record;
    record["a"] = scenario.alice_outcomes(j)[digits[0]];
    ordered_json bs = ordered_json::array();
    for (int k = 0; k < joint.bob_settings(); ++k) {
      bs.push_back(scenario.bob_outcomes(k)[digits[1 + k]]);
    }
    record["bs"] = std::move(bs);
    record["q"] = joint.table()[i];
    entries.push_back(std::move(record));
  }
  doc["entries"] = std::move(entries);
  return doc.dump();
}

double bob_equality(const CompatibleJoint& joint, const Scenario& scenario,
                    int k, int l) {
  if (k < 0 || l < 0 || k >= joint.bob_settings() || l >= joint.bob_settings()) {
    throw DimensionError("Bob setting out of range");
  }
  const MixedRadix& layout = joint.layout();
  double mass = 0.0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const Label bk = scenario.bob_outcomes(k)[layout.digit(i, 1 + k)];
    const Label bl = scenario.bob_outcomes(l)[layout.digit(i, 1 + l)];
    if (bk == bl) mass += joint.table()[i];
  }
  return mass;
}

}  // namespace bellkit
