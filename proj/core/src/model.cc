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

#include "bellkit/model.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "bellkit/errors.h"

namespace bellkit {
namespace {

void check_outcome_sets(const std::vector<OutcomeSet>& sets,
                        const char* lab) {
  if (sets.empty()) {
    throw DimensionError(std::string(lab) + " has no measurement settings");
  }
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (sets[s].empty()) {
      std::ostringstream msg;
      msg << lab << " setting " << s << " has no outcomes";
      throw DimensionError(msg.str());
    }
    std::set<Label> seen(sets[s].begin(), sets[s].end());
    if (seen.size() != sets[s].size()) {
      std::ostringstream msg;
      msg << lab << " setting " << s << " repeats an outcome label";
      throw DimensionError(msg.str());
    }
  }
}

std::optional<std::size_t> find_label(const OutcomeSet& set, Label label) {
  auto it = std::find(set.begin(), set.end(), label);
  if (it == set.end()) return std::nullopt;
  return static_cast<std::size_t>(it - set.begin());
}

}  // namespace

Scenario::Scenario(std::vector<OutcomeSet> alice_outcomes,
                   std::vector<OutcomeSet> bob_outcomes)
    : alice_(std::move(alice_outcomes)), bob_(std::move(bob_outcomes)) {
  check_outcome_sets(alice_, "Alice");
  check_outcome_sets(bob_, "Bob");
  offsets_.reserve(alice_.size() * bob_.size());
  for (const auto& a : alice_) {
    for (const auto& b : bob_) {
      offsets_.push_back(entry_count_);
      entry_count_ += a.size() * b.size();
    }
  }
}

Scenario Scenario::uniform(int alice_settings, int bob_settings,
                           const OutcomeSet& labels) {
  if (alice_settings < 1 || bob_settings < 1) {
    throw DimensionError("setting counts must be positive");
  }
  return Scenario(std::vector<OutcomeSet>(alice_settings, labels),
                  std::vector<OutcomeSet>(bob_settings, labels));
}

Scenario Scenario::binary(int alice_settings, int bob_settings) {
  return uniform(alice_settings, bob_settings, {0, 1});
}

const OutcomeSet& Scenario::alice_outcomes(int x) const {
  if (x < 0 || x >= alice_settings()) {
    throw DimensionError("Alice setting " + std::to_string(x) +
                         " out of range");
  }
  return alice_[x];
}

const OutcomeSet& Scenario::bob_outcomes(int y) const {
  if (y < 0 || y >= bob_settings()) {
    throw DimensionError("Bob setting " + std::to_string(y) +
                         " out of range");
  }
  return bob_[y];
}

std::optional<std::size_t> Scenario::alice_index(int x, Label label) const {
  return find_label(alice_outcomes(x), label);
}

std::optional<std::size_t> Scenario::bob_index(int y, Label label) const {
  return find_label(bob_outcomes(y), label);
}

std::size_t Scenario::table_offset(int x, int y) const {
  return offsets_[static_cast<std::size_t>(x) * bob_.size() + y];
}

void Scenario::check_settings(int x, int y) const {
  if (x < 0 || x >= alice_settings() || y < 0 || y >= bob_settings()) {
    std::ostringstream msg;
    msg << "setting pair (" << x << ", " << y << ") out of range for a "
        << alice_settings() << "x" << bob_settings() << " scenario";
    throw DimensionError(msg.str());
  }
}

Behavior::Behavior(Scenario scenario, std::vector<double> entries, double tol)
    : scenario_(std::move(scenario)), entries_(std::move(entries)) {
  if (entries_.size() != scenario_.entry_count()) {
    throw DimensionError("behavior has " + std::to_string(entries_.size()) +
                         " entries, scenario needs " +
                         std::to_string(scenario_.entry_count()));
  }
  for (int x = 0; x < scenario_.alice_settings(); ++x) {
    for (int y = 0; y < scenario_.bob_settings(); ++y) {
      const std::size_t begin = scenario_.table_offset(x, y);
      const std::size_t end =
          begin + scenario_.alice_count(x) * scenario_.bob_count(y);
      double sum = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        double& p = entries_[i];
        if (!std::isfinite(p) || p < -tol) {
          std::ostringstream msg;
          msg << "table (" << x << ", " << y << ") has invalid entry " << p;
          throw NormalizationError(msg.str());
        }
        if (p < 0.0) p = 0.0;
        sum += p;
      }
      if (std::abs(sum - 1.0) > tol) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "table (" << x << ", " << y << ") sums to " << sum;
        throw NormalizationError(msg.str());
      }
      if (sum != 1.0) {
        for (std::size_t i = begin; i < end; ++i) entries_[i] /= sum;
      }
    }
  }
}

Behavior Behavior::from_function(
    Scenario scenario,
    const std::function<double(int, int, std::size_t, std::size_t)>& p,
    double tol) {
  std::vector<double> entries;
  entries.reserve(scenario.entry_count());
  for (int x = 0; x < scenario.alice_settings(); ++x) {
    for (int y = 0; y < scenario.bob_settings(); ++y) {
      for (std::size_t a = 0; a < scenario.alice_count(x); ++a) {
        for (std::size_t b = 0; b < scenario.bob_count(y); ++b) {
          entries.push_back(p(x, y, a, b));
        }
      }
    }
  }
  return Behavior(std::move(scenario), std::move(entries), tol);
}

std::span<const double> Behavior::table(int x, int y) const {
  scenario_.check_settings(x, y);
  return std::span<const double>(entries_).subspan(
      scenario_.table_offset(x, y),
      scenario_.alice_count(x) * scenario_.bob_count(y));
}

Behavior mixture(const Behavior& first, const Behavior& second,
                 double weight) {
  if (!(first.scenario() == second.scenario())) {
    throw DimensionError("cannot mix behaviors of different scenarios");
  }
  if (weight < 0.0 || weight > 1.0) {
    throw DimensionError("mixing weight must lie in [0, 1]");
  }
  std::vector<double> entries(first.entries().size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i] = weight * first.entries()[i] +
                 (1.0 - weight) * second.entries()[i];
  }
  return Behavior(first.scenario(), std::move(entries));
}

double equality_probability(const Behavior& behavior, int x, int y) {
  const Scenario& s = behavior.scenario();
  s.check_settings(x, y);
  const OutcomeSet& alice = s.alice_outcomes(x);
  const OutcomeSet& bob = s.bob_outcomes(y);
  double eq = 0.0;
  for (std::size_t a = 0; a < alice.size(); ++a) {
    for (std::size_t b = 0; b < bob.size(); ++b) {
      if (alice[a] == bob[b]) eq += behavior.prob(x, y, a, b);
    }
  }
  return std::clamp(eq, 0.0, 1.0);
}

double correlation(const Behavior& behavior, int x, int y) {
  return 2.0 * equality_probability(behavior, x, y) - 1.0;
}

EmpiricalBehavior::EmpiricalBehavior(Scenario scenario,
                                     std::vector<std::uint64_t> counts)
    : scenario_(std::move(scenario)), counts_(std::move(counts)) {
  if (counts_.size() != scenario_.entry_count()) {
    throw DimensionError("count table has " + std::to_string(counts_.size()) +
                         " entries, scenario needs " +
                         std::to_string(scenario_.entry_count()));
  }
  const int m = scenario_.alice_settings();
  const int n = scenario_.bob_settings();
  runs_.assign(static_cast<std::size_t>(m) * n, 0);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < n; ++y) {
      const std::size_t begin = scenario_.table_offset(x, y);
      const std::size_t size = scenario_.alice_count(x) * scenario_.bob_count(y);
      std::uint64_t total = 0;
      for (std::size_t i = 0; i < size; ++i) total += counts_[begin + i];
      runs_[static_cast<std::size_t>(x) * n + y] = total;
    }
  }
}

std::uint64_t EmpiricalBehavior::runs(int x, int y) const {
  scenario_.check_settings(x, y);
  return runs_[static_cast<std::size_t>(x) * scenario_.bob_settings() + y];
}

bool EmpiricalBehavior::complete() const {
  return std::all_of(runs_.begin(), runs_.end(),
                     [](std::uint64_t n) { return n > 0; });
}

double EmpiricalBehavior::frequency(int x, int y, std::size_t a,
                                    std::size_t b) const {
  const std::uint64_t n = runs(x, y);
  if (n == 0) return 0.0;
  return static_cast<double>(count(x, y, a, b)) / static_cast<double>(n);
}

double EmpiricalBehavior::standard_error(int x, int y, std::size_t a,
                                         std::size_t b) const {
  const std::uint64_t n = runs(x, y);
  if (n == 0) return 0.0;
  const double f = frequency(x, y, a, b);
  return std::sqrt(f * (1.0 - f) / static_cast<double>(n));
}

Behavior EmpiricalBehavior::frequencies() const {
  for (int x = 0; x < scenario_.alice_settings(); ++x) {
    for (int y = 0; y < scenario_.bob_settings(); ++y) {
      if (!has_runs(x, y)) {
        std::ostringstream msg;
        msg << "setting pair (" << x << ", " << y << ") has no runs";
        throw DimensionError(msg.str());
      }
    }
  }
  return Behavior::from_function(
      scenario_, [this](int x, int y, std::size_t a, std::size_t b) {
        return frequency(x, y, a, b);
      });
}

}  // namespace bellkit
