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

#include "bellkit/sweep.h"

#include <charconv>
#include <cmath>

#include "bellkit/chsh.h"
#include "bellkit/errors.h"
#include "bellkit/generators.h"
#include "bellkit/model.h"

namespace bellkit {
namespace {

Behavior correlated_bit_box() {
  return Behavior::from_function(Scenario::binary(),
                                 [](int, int, std::size_t a, std::size_t b) {
                                   return a == b ? 0.5 : 0.0;
                                 });
}

Behavior family_member(const SweepSpec& spec, double t) {
  switch (spec.family) {
    case SweepFamily::quantum_angle: {
      QuantumSetup setup = tsirelson_setup();
      const double angle = degrees(t);
      switch (spec.angle) {
        case AngleParameter::alice: setup.alice_angles[0] = angle; break;
        case AngleParameter::alice_prime: setup.alice_angles[1] = angle; break;
        case AngleParameter::bob: setup.bob_angles[0] = angle; break;
        case AngleParameter::bob_prime: setup.bob_angles[1] = angle; break;
      }
      return quantum_behavior(setup);
    }
    case SweepFamily::pr_noise:
    case SweepFamily::lhv_noise:
      if (t < 0.0 || t > 1.0) {
        throw DimensionError("noise weight must lie in [0, 1]");
      }
      return mixture(spec.family == SweepFamily::pr_noise ? pr_box() : correlated_bit_box(),
                     uniform_binary(), t);
  }
  throw DimensionError("unknown sweep family");
}

std::string shortest(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

}  // namespace

SweepFamily parse_sweep_family(std::string_view name) {
  if (name == "quantum") return SweepFamily::quantum_angle;
  if (name == "pr-noise") return SweepFamily::pr_noise;
  if (name == "lhv-noise") return SweepFamily::lhv_noise;
  throw SchemaError("unknown sweep family '" + std::string(name) +
                    "' (expected quantum, pr-noise, lhv-noise)");
}

AngleParameter parse_angle_parameter(std::string_view name) {
  if (name == "alice") return AngleParameter::alice;
  if (name == "alice-prime") return AngleParameter::alice_prime;
  if (name == "bob") return AngleParameter::bob;
  if (name == "bob-prime") return AngleParameter::bob_prime;
  throw SchemaError("unknown angle parameter '" + std::string(name) +
                    "' (expected alice, alice-prime, bob, bob-prime)");
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  if (spec.steps < 2) throw DimensionError("a sweep needs at least 2 steps");
  if (!std::isfinite(spec.from) || !std::isfinite(spec.to)) {
    throw DimensionError("sweep range must be finite");
  }
  std::vector<SweepRow> rows;
  rows.reserve(spec.steps);
  const double span = spec.to - spec.from;
  const auto last = static_cast<double>(spec.steps - 1);
  for (std::size_t i = 0; i < spec.steps; ++i) {
    const double t = i + 1 == spec.steps
                         ? spec.to
                         : spec.from + span * (static_cast<double>(i) / last);
    const Behavior behavior = family_member(spec, t);
    const ChshReport* best = nullptr;
    const std::vector<ChshReport> reports = all_permutations(behavior);
    for (const ChshReport& r : reports) {
      if (r.is_max) best = &r;
    }
    rows.push_back({t, best->correlator_S, best->probability_form_lhs,
                    best->gap_lower_bound});
  }
  return rows;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = csv_field("parameter") + "," + csv_field("S") + "," +
                    csv_field("probability_form") + "," + csv_field("gap_bound") +
                    "\r\n";
  for (const SweepRow& r : rows) {
    out += shortest(r.parameter) + "," + shortest(r.S) + "," +
           shortest(r.probability_form) + "," + shortest(r.gap_bound) + "\r\n";
  }
  return out;
}

}  // namespace bellkit
