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

#ifndef BELLKIT_SWEEP_H_
#define BELLKIT_SWEEP_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bellkit {

enum class SweepFamily {
  // One measurement angle in degrees on the maximally correlated state, the
  // other three held at their Tsirelson values.
  quantum_angle,
  // PR box mixed with white noise; the parameter is the PR weight.
  pr_noise,
  // Perfectly correlated shared-bit model mixed with white noise.
  lhv_noise,
};

enum class AngleParameter { alice, alice_prime, bob, bob_prime };

struct SweepSpec {
  SweepFamily family = SweepFamily::quantum_angle;
  AngleParameter angle = AngleParameter::bob;
  double from = 0.0;
  double to = 45.0;
  std::size_t steps = 91;
};

/// One row per grid point. S and the probability form are taken from the
/// permutation with the largest S.
struct SweepRow {
  double parameter = 0.0;
  double S = 0.0;
  double probability_form = 0.0;
  double gap_bound = 0.0;  // (S - 2) / 2
};

/// "quantum", "pr-noise", or "lhv-noise".
SweepFamily parse_sweep_family(std::string_view name);
/// "alice", "alice-prime", "bob", or "bob-prime".
AngleParameter parse_angle_parameter(std::string_view name);

/// Evenly spaced grid including both ends. Throws DimensionError when steps
/// < 2 or an end is not finite.
std::vector<SweepRow> sweep(const SweepSpec& spec);

/// Header "parameter,S,probability_form,gap_bound", then one line per row
/// with round-trip numbers.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// RFC 4180 field: quoted when it holds a comma, quote, or line break.
std::string csv_field(std::string_view text);

}  // namespace bellkit

#endif  // BELLKIT_SWEEP_H_
