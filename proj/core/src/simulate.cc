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

#include "bellkit/simulate.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <thread>

#include "bellkit/errors.h"
#include "bellkit/rng.h"

namespace bellkit {

std::string SettingPolicy::name() const {
  switch (kind) {
    case Kind::uniform_random:
      return "uniform";
    case Kind::round_robin:
      return "round-robin";
    case Kind::fixed:
      return "fixed:" + std::to_string(x) + "," + std::to_string(y);
  }
  return "unknown";
}

SettingPolicy SettingPolicy::parse(std::string_view text) {
  if (text == "uniform" || text == "uniform-random") return uniform();
  if (text == "round-robin") return round_robin();
  constexpr std::string_view prefix = "fixed:";
  if (text.substr(0, prefix.size()) == prefix) {
    std::string_view rest = text.substr(prefix.size());
    const auto comma = rest.find(',');
    int x = -1, y = -1;
    if (comma != std::string_view::npos) {
      auto rx = std::from_chars(rest.data(), rest.data() + comma, x);
      auto ry = std::from_chars(rest.data() + comma + 1, rest.data() + rest.size(), y);
      if (rx.ec == std::errc() && ry.ec == std::errc() &&
          rx.ptr == rest.data() + comma && ry.ptr == rest.data() + rest.size()) {
        return fixed(x, y);
      }
    }
  }
  throw SchemaError("unknown setting policy '" + std::string(text) +
                    "' (expected uniform, round-robin, fixed:X,Y)");
}

namespace {

// Cumulative distribution of every table, in table order.
struct Sampler {
  const Behavior& behavior;
  std::vector<double> cumulative;

  explicit Sampler(const Behavior& b) : behavior(b), cumulative(b.entries().size()) {
    const Scenario& s = b.scenario();
    for (int x = 0; x < s.alice_settings(); ++x) {
      for (int y = 0; y < s.bob_settings(); ++y) {
        const std::size_t begin = s.table_offset(x, y);
        const std::size_t size = s.alice_count(x) * s.bob_count(y);
        double acc = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
          acc += b.entries()[begin + i];
          cumulative[begin + i] = acc;
        }
        // The last cell with mass absorbs rounding.
        for (std::size_t i = size; i-- > 0;) {
          if (b.entries()[begin + i] > 0.0) {
            for (std::size_t k = i; k < size; ++k) cumulative[begin + k] = 2.0;
            break;
          }
        }
      }
    }
  }

  // Flat entry index of the drawn outcome.
  std::size_t draw(std::uint64_t seed, std::uint64_t run, SettingPolicy policy,
                   int& x, int& y) const {
    const Scenario& s = behavior.scenario();
    Xoshiro256 rng = Xoshiro256::for_stream(seed, run);
    const auto m = static_cast<std::uint64_t>(s.alice_settings());
    const auto n = static_cast<std::uint64_t>(s.bob_settings());
    switch (policy.kind) {
      case SettingPolicy::Kind::uniform_random:
        x = static_cast<int>(rng.below(m));
        y = static_cast<int>(rng.below(n));
        break;
      case SettingPolicy::Kind::round_robin:
        x = static_cast<int>((run % (m * n)) / n);
        y = static_cast<int>(run % n);
        break;
      case SettingPolicy::Kind::fixed:
        x = policy.x;
        y = policy.y;
        break;
    }
    const std::size_t begin = s.table_offset(x, y);
    const std::size_t size = s.alice_count(x) * s.bob_count(y);
    const double u = rng.uniform();
    const auto first = cumulative.begin() + static_cast<std::ptrdiff_t>(begin);
    const auto it = std::upper_bound(first, first + static_cast<std::ptrdiff_t>(size), u);
    return begin + static_cast<std::size_t>(it - first);
  }
};

void check_request(const Behavior& behavior, std::uint64_t n_runs, SettingPolicy policy) {
  if (n_runs == 0) throw DimensionError("number of runs must be positive");
  if (policy.kind == SettingPolicy::Kind::fixed) {
    behavior.scenario().check_settings(policy.x, policy.y);
  }
}

// Runs fn(begin, end, shard) over contiguous run ranges.
template <typename Fn>
void shard_runs(std::uint64_t n_runs, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n_runs < 2 * static_cast<std::uint64_t>(workers)) {
    fn(std::uint64_t{0}, n_runs, 0u);
    return;
  }
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (n_runs + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(n_runs, chunk * w);
    const std::uint64_t end = std::min(n_runs, begin + chunk);
    threads.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

Dataset simulate_runs(const Behavior& behavior, std::uint64_t n_runs,
                      SettingPolicy policy, std::uint64_t seed, unsigned workers) {
  check_request(behavior, n_runs, policy);
  const Scenario& s = behavior.scenario();
  const Sampler sampler(behavior);
  Dataset dataset{s, std::vector<RunRecord>(n_runs), seed, policy};
  shard_runs(n_runs, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    for (std::uint64_t run = begin; run < end; ++run) {
      int x = 0, y = 0;
      const std::size_t entry = sampler.draw(seed, run, policy, x, y) - s.table_offset(x, y);
      const std::size_t cols = s.bob_count(y);
      dataset.runs[run] = {run, x, y, s.alice_outcomes(x)[entry / cols],
                           s.bob_outcomes(y)[entry % cols]};
    }
  });
  return dataset;
}

EmpiricalBehavior simulate_counts(const Behavior& behavior, std::uint64_t n_runs,
                                  SettingPolicy policy, std::uint64_t seed,
                                  unsigned workers) {
  check_request(behavior, n_runs, policy);
  const Sampler sampler(behavior);
  const std::size_t entries = behavior.entries().size();
  std::vector<std::vector<std::uint64_t>> partial(std::max(1u, workers),
                                                  std::vector<std::uint64_t>(entries, 0));
  shard_runs(n_runs, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned shard) {
    auto& counts = partial[shard];
    for (std::uint64_t run = begin; run < end; ++run) {
      int x = 0, y = 0;
      ++counts[sampler.draw(seed, run, policy, x, y)];
    }
  });
  std::vector<std::uint64_t> counts(entries, 0);
  for (const auto& shard : partial) {
    for (std::size_t e = 0; e < entries; ++e) counts[e] += shard[e];
  }
  return EmpiricalBehavior(behavior.scenario(), std::move(counts));
}

EmpiricalBehavior estimate_behavior(const Dataset& dataset) {
  const Scenario& s = dataset.scenario;
  std::vector<std::uint64_t> counts(s.entry_count(), 0);
  for (const RunRecord& r : dataset.runs) {
    s.check_settings(r.x, r.y);
    auto a = s.alice_index(r.x, r.a);
    auto b = s.bob_index(r.y, r.b);
    if (!a || !b) {
      throw LabelError("run " + std::to_string(r.run) + " records an undeclared label");
    }
    ++counts[s.table_offset(r.x, r.y) + *a * s.bob_count(r.y) + *b];
  }
  return EmpiricalBehavior(s, std::move(counts));
}

std::string dataset_csv(const Dataset& dataset) {
  std::ostringstream out;
  out << "run,x,y,a,b\n";
  for (const RunRecord& r : dataset.runs) {
    out << r.run << ',' << r.x << ',' << r.y << ',' << r.a << ',' << r.b << '\n';
  }
  return out.str();
}

EmpiricalChsh empirical_chsh(const EmpiricalBehavior& empirical,
                             const ChshPermutation& perm) {
  const Scenario& s = empirical.scenario();
  check_permutation(s, perm);
  const std::pair<int, int> pairs[] = {{perm.alice, perm.bob},
                                       {perm.alice, perm.bob_prime},
                                       {perm.alice_prime, perm.bob},
                                       {perm.alice_prime, perm.bob_prime}};
  double variance = 0.0;
  for (const auto& [x, y] : pairs) {
    if (!empirical.has_runs(x, y)) {
      throw DimensionError("setting pair (" + std::to_string(x) + ", " +
                           std::to_string(y) + ") has no runs");
    }
    double eq = 0.0;
    for (std::size_t a = 0; a < s.alice_count(x); ++a) {
      for (std::size_t b = 0; b < s.bob_count(y); ++b) {
        if (s.alice_outcomes(x)[a] == s.bob_outcomes(y)[b]) {
          eq += empirical.frequency(x, y, a, b);
        }
      }
    }
    variance += 4.0 * eq * (1.0 - eq) / static_cast<double>(empirical.runs(x, y));
  }
  // Pairs outside the permutation may be empty; fill them with a placeholder
  // table so the four used pairs can be scored.
  const Behavior frequencies = Behavior::from_function(
      s, [&](int x, int y, std::size_t a, std::size_t b) {
        if (!empirical.has_runs(x, y)) {
          return 1.0 / static_cast<double>(s.alice_count(x) * s.bob_count(y));
        }
        return empirical.frequency(x, y, a, b);
      });
  EmpiricalChsh out;
  out.report = chsh_report(frequencies, perm);
  out.sigma_S = std::sqrt(variance);
  out.sigma_probability_form = 0.5 * out.sigma_S;
  return out;
}

}  // namespace bellkit
