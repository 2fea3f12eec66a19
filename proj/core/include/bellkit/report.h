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

#ifndef BELLKIT_REPORT_H_
#define BELLKIT_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bellkit/chsh.h"
#include "bellkit/feasibility.h"
#include "bellkit/io.h"
#include "bellkit/model.h"
#include "bellkit/nosignal.h"

namespace bellkit {

inline constexpr const char* kVersion = "0.1.0";

struct AnalyzeOptions {
  double tol_ns = kTolNoSignaling;          // exact behaviors
  double z_threshold = kNoSignalingSigmas;  // count data
  double tol_lp = kTolLp;
};

/// The invariance-gap section for one permutation.
struct GapAnalysis {
  ChshPermutation permutation;
  double lower_bound = 0.0;         // (S - 2) / 2, may be negative
  double min_invariance_gap = 0.0;  // least q(B=B') - q'(B=B')
  double min_tv_separation = 0.0;   // least TV(q(b, b'), q'(b, b'))
  double compatible_gap = 0.0;      // the same gap for the product joints
  // The least gap sits within kBoundaryBand of a positive bound.
  bool saturated = false;
};

/// Throws NoSignalingError when the behavior signals and LpFailure on
/// solver trouble.
GapAnalysis gap_analysis(const Behavior& behavior,
                         const ChshPermutation& perm = {},
                         double tol_ns = kTolNoSignaling);

struct AnalysisReport {
  explicit AnalysisReport(Scenario s) : scenario(std::move(s)) {}

  bool empirical = false;
  Scenario scenario;
  FileMetadata metadata;
  ValidationReport validation;
  std::uint64_t total_runs = 0;  // empirical only
  std::vector<ChshReport> permutations;
  std::vector<double> sigma_S;  // empirical only, one per permutation
  std::optional<std::size_t> max_index;
  std::optional<MembershipResult> membership;
  std::string membership_note;  // why membership is absent
  std::optional<GapAnalysis> gap;
  std::string gap_note;  // why the gap section is absent
  std::optional<double> negativity;
};

/// Full analysis of exact probabilities. Sections that need no-signaling
/// are skipped with a note when the check fails. Throws LpFailure.
AnalysisReport analyze(const Behavior& behavior, const FileMetadata& metadata = {},
                       const AnalyzeOptions& options = {});

/// Count data: z-score no-signaling and CHSH with binomial error bars. The
/// LP sections are skipped since frequencies are never exactly
/// no-signaling.
AnalysisReport analyze(const EmpiricalBehavior& empirical,
                       const FileMetadata& metadata = {},
                       const AnalyzeOptions& options = {});

/// Deterministic JSON (fixed key order, round-trip doubles).
std::string report_json(const AnalysisReport& report);
/// Fixed six-decimal text rendering.
std::string report_text(const AnalysisReport& report);

std::string membership_json(const MembershipResult& result, const Scenario& scenario);
std::string membership_text(const MembershipResult& result, const Scenario& scenario);
std::string gap_json(const GapAnalysis& gap);
std::string gap_text(const GapAnalysis& gap);

/// Six decimals, with values that round to zero printed unsigned.
std::string fixed6(double value);

}  // namespace bellkit

#endif  // BELLKIT_REPORT_H_
