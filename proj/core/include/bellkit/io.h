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

#ifndef BELLKIT_IO_H_
#define BELLKIT_IO_H_

#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "bellkit/model.h"
#include "bellkit/simulate.h"

namespace bellkit {

// Behavior file (JSON):
//
//   {
//     "scenario": {"alice_outcomes": [[0, 1], [0, 1]],
//                  "bob_outcomes":   [[0, 1], [0, 1]]},
//     "tables": [[ [{"a": 0, "b": 0, "p": 0.5}, ...],   // x = 0, y = 0
//                  [...] ],                             // x = 0, y = 1
//                [ ... ]],                              // x = 1
//     "description": "optional free text",
//     "provenance": {optional object of string/number metadata}
//   }
//
// Omitted (a, b) records carry probability zero. An empirical file uses an
// integer "count" instead of "p" in every record. Unknown fields anywhere are
// rejected.

/// Free-form metadata carried through a file round trip.
struct FileMetadata {
  std::string description;
  std::map<std::string, std::string> provenance;
};

/// Parses a behavior file. Throws SchemaError, NormalizationError, or
/// LabelError.
Behavior load_behavior(std::string_view text, double tol = kTolNorm,
                       FileMetadata* metadata = nullptr);

/// Parses an empirical (count) file.
EmpiricalBehavior load_empirical(std::string_view text,
                                 FileMetadata* metadata = nullptr);

/// Either kind, decided by whether records carry "p" or "count". A dataset
/// file is accepted too and tallied into counts; its seed, policy, and
/// generator land in the metadata provenance.
std::variant<Behavior, EmpiricalBehavior> load_any(
    std::string_view text, FileMetadata* metadata = nullptr);

/// Serializes every entry, zeros included, with round-trip precision.
std::string dump_behavior(const Behavior& behavior,
                          const FileMetadata& metadata = {});
std::string dump_empirical(const EmpiricalBehavior& empirical,
                           const FileMetadata& metadata = {});

// Dataset file (JSON): one [x, y, a, b] record per run, in run order.
//
//   {"scenario": {...}, "seed": 7, "policy": "uniform", "rng": "...",
//    "runs": [[0, 1, 1, 0], ...]}

std::string dump_dataset(const Dataset& dataset);
/// Throws SchemaError or LabelError.
Dataset load_dataset(std::string_view text);

/// Reads a whole file; "-" means standard input. Throws SchemaError when the
/// file cannot be opened.
std::string read_text(const std::string& path);

}  // namespace bellkit

#endif  // BELLKIT_IO_H_
