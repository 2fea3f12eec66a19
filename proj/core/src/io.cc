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

#include "bellkit/io.h"

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include "bellkit/errors.h"
#include "json.hpp"

namespace bellkit {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown(const json& object, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) {
      throw SchemaError("unknown field '" + it.key() + "' in " + where);
    }
  }
}

const json& require(const json& object, const char* key,
                    const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw SchemaError("missing field '" + std::string(key) + "' in " + where);
  }
  return *it;
}

std::vector<OutcomeSet> parse_outcome_sets(const json& node,
                                           const std::string& where) {
  if (!node.is_array()) throw SchemaError(where + " must be an array");
  std::vector<OutcomeSet> sets;
  for (const auto& set : node) {
    if (!set.is_array()) {
      throw SchemaError(where + " entries must be arrays of integers");
    }
    OutcomeSet labels;
    for (const auto& label : set) {
      if (!label.is_number_integer()) {
        throw SchemaError(where + " labels must be integers");
      }
      labels.push_back(label.get<Label>());
    }
    sets.push_back(std::move(labels));
  }
  return sets;
}

Scenario parse_scenario(const json& node) {
  if (!node.is_object()) throw SchemaError("'scenario' must be an object");
  reject_unknown(node, {"alice_outcomes", "bob_outcomes"}, "scenario");
  auto alice = parse_outcome_sets(require(node, "alice_outcomes", "scenario"),
                                  "alice_outcomes");
  auto bob =
      parse_outcome_sets(require(node, "bob_outcomes", "scenario"), "bob_outcomes");
  try {
    return Scenario(std::move(alice), std::move(bob));
  } catch (const DimensionError& e) {
    throw SchemaError(std::string("invalid scenario: ") + e.what());
  }
}

json parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("document must be a JSON object");
  return doc;
}

json parse_document(std::string_view text) {
  json doc = parse_json(text);
  reject_unknown(doc, {"scenario", "tables", "description", "provenance"},
                 "document");
  return doc;
}

bool is_dataset(const json& doc) { return doc.contains("runs"); }

Dataset dataset_from_doc(const json& doc) {
  reject_unknown(doc, {"scenario", "seed", "policy", "rng", "runs"},
                 "dataset");
  Dataset dataset{parse_scenario(require(doc, "scenario", "dataset")), {}, 0,
                  SettingPolicy::uniform()};
  const json& seed = require(doc, "seed", "dataset");
  if (!seed.is_number_unsigned()) {
    throw SchemaError("'seed' must be a nonnegative integer");
  }
  dataset.seed = seed.get<std::uint64_t>();
  const json& policy = require(doc, "policy", "dataset");
  if (!policy.is_string()) throw SchemaError("'policy' must be a string");
  dataset.policy = SettingPolicy::parse(policy.get<std::string>());
  if (auto it = doc.find("rng"); it != doc.end() && !it->is_string()) {
    throw SchemaError("'rng' must be a string");
  }
  const json& runs = require(doc, "runs", "dataset");
  if (!runs.is_array()) throw SchemaError("'runs' must be an array");
  const Scenario& s = dataset.scenario;
  dataset.runs.reserve(runs.size());
  std::uint64_t index = 0;
  for (const json& record : runs) {
    const std::string where = "runs[" + std::to_string(index) + "]";
    if (!record.is_array() || record.size() != 4) {
      throw SchemaError(where + " must be [x, y, a, b]");
    }
    for (const json& field : record) {
      if (!field.is_number_integer()) {
        throw SchemaError(where + " fields must be integers");
      }
    }
    RunRecord r{index, record[0].get<int>(), record[1].get<int>(),
                record[2].get<Label>(), record[3].get<Label>()};
    if (r.x < 0 || r.x >= s.alice_settings() || r.y < 0 ||
        r.y >= s.bob_settings()) {
      throw SchemaError(where + " has a setting out of range");
    }
    if (!s.alice_index(r.x, r.a) || !s.bob_index(r.y, r.b)) {
      throw LabelError(where + " records an undeclared label");
    }
    dataset.runs.push_back(r);
    ++index;
  }
  return dataset;
}

void parse_metadata(const json& doc, FileMetadata* metadata) {
  if (auto it = doc.find("description"); it != doc.end()) {
    if (!it->is_string()) throw SchemaError("'description' must be a string");
    if (metadata) metadata->description = it->get<std::string>();
  }
  if (auto it = doc.find("provenance"); it != doc.end()) {
    if (!it->is_object()) throw SchemaError("'provenance' must be an object");
    for (auto field = it->begin(); field != it->end(); ++field) {
      std::string value;
      if (field->is_string()) {
        value = field->get<std::string>();
      } else if (field->is_number() || field->is_boolean()) {
        value = field->dump();
      } else {
        throw SchemaError("'provenance' values must be scalars");
      }
      if (metadata) metadata->provenance[field.key()] = value;
    }
  }
}

enum class RecordKind { probability, count };

// Walks every record of every table, calling sink(flat_index, value_node).
template <typename Sink>
void parse_tables(const json& doc, const Scenario& scenario, RecordKind kind,
                  Sink&& sink) {
  const json& tables = require(doc, "tables", "document");
  const int m = scenario.alice_settings();
  const int n = scenario.bob_settings();
  if (!tables.is_array() || tables.size() != static_cast<std::size_t>(m)) {
    throw SchemaError("'tables' must be an array with one row per Alice "
                      "setting (" + std::to_string(m) + ")");
  }
  const char* value_key = kind == RecordKind::probability ? "p" : "count";
  for (int x = 0; x < m; ++x) {
    const json& row = tables[x];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      throw SchemaError("'tables[" + std::to_string(x) +
                        "]' must hold one table per Bob setting (" +
                        std::to_string(n) + ")");
    }
    for (int y = 0; y < n; ++y) {
      const std::string where =
          "tables[" + std::to_string(x) + "][" + std::to_string(y) + "]";
      const json& table = row[y];
      if (!table.is_array()) throw SchemaError(where + " must be an array");
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const json& record : table) {
        if (!record.is_object()) {
          throw SchemaError(where + " records must be objects");
        }
        reject_unknown(record, {"a", "b", value_key}, where);
        const json& a = require(record, "a", where);
        const json& b = require(record, "b", where);
        const json& value = require(record, value_key, where);
        if (!a.is_number_integer() || !b.is_number_integer()) {
          throw SchemaError(where + " labels must be integers");
        }
        auto ai = scenario.alice_index(x, a.get<Label>());
        auto bi = scenario.bob_index(y, b.get<Label>());
        if (!ai) {
          throw LabelError(where + ": Alice label " + a.dump() +
                           " not declared for setting " + std::to_string(x));
        }
        if (!bi) {
          throw LabelError(where + ": Bob label " + b.dump() +
                           " not declared for setting " + std::to_string(y));
        }
        if (!seen.emplace(*ai, *bi).second) {
          throw SchemaError(where + " repeats the pair (" + a.dump() + ", " +
                            b.dump() + ")");
        }
        sink(scenario.table_offset(x, y) + *ai * scenario.bob_count(y) + *bi,
             value, where);
      }
    }
  }
}

RecordKind detect_kind(const json& doc) {
  const json& tables = require(doc, "tables", "document");
  if (tables.is_array()) {
    for (const auto& row : tables) {
      if (!row.is_array()) continue;
      for (const auto& table : row) {
        if (!table.is_array()) continue;
        for (const auto& record : table) {
          if (!record.is_object()) continue;
          if (record.contains("count")) return RecordKind::count;
          if (record.contains("p")) return RecordKind::probability;
        }
      }
    }
  }
  return RecordKind::probability;
}

Behavior behavior_from_doc(const json& doc, double tol) {
  Scenario scenario = parse_scenario(require(doc, "scenario", "document"));
  std::vector<double> entries(scenario.entry_count(), 0.0);
  parse_tables(doc, scenario, RecordKind::probability,
               [&](std::size_t i, const json& value, const std::string& where) {
                 if (!value.is_number()) {
                   throw SchemaError(where + " 'p' must be a number");
                 }
                 entries[i] = value.get<double>();
               });
  return Behavior(std::move(scenario), std::move(entries), tol);
}

EmpiricalBehavior empirical_from_doc(const json& doc) {
  Scenario scenario = parse_scenario(require(doc, "scenario", "document"));
  std::vector<std::uint64_t> counts(scenario.entry_count(), 0);
  parse_tables(doc, scenario, RecordKind::count,
               [&](std::size_t i, const json& value, const std::string& where) {
                 if (!value.is_number_integer() ||
                     (value.is_number_integer() && !value.is_number_unsigned() &&
                      value.get<std::int64_t>() < 0)) {
                   throw SchemaError(where +
                                     " 'count' must be a nonnegative integer");
                 }
                 counts[i] = value.get<std::uint64_t>();
               });
  return EmpiricalBehavior(std::move(scenario), std::move(counts));
}

ordered_json scenario_json(const Scenario& s) {
  ordered_json alice = ordered_json::array();
  for (int x = 0; x < s.alice_settings(); ++x) alice.push_back(s.alice_outcomes(x));
  ordered_json bob = ordered_json::array();
  for (int y = 0; y < s.bob_settings(); ++y) bob.push_back(s.bob_outcomes(y));
  ordered_json out;
  out["alice_outcomes"] = std::move(alice);
  out["bob_outcomes"] = std::move(bob);
  return out;
}

template <typename Value>
std::string dump_document(const Scenario& s, const FileMetadata& metadata,
                          const char* key, Value&& value_at) {
  ordered_json doc;
  doc["scenario"] = scenario_json(s);
  ordered_json tables = ordered_json::array();
  for (int x = 0; x < s.alice_settings(); ++x) {
    ordered_json row = ordered_json::array();
    for (int y = 0; y < s.bob_settings(); ++y) {
      ordered_json table = ordered_json::array();
      for (std::size_t a = 0; a < s.alice_count(x); ++a) {
        for (std::size_t b = 0; b < s.bob_count(y); ++b) {
          ordered_json record;
          record["a"] = s.alice_outcomes(x)[a];
          record["b"] = s.bob_outcomes(y)[b];
          record[key] = value_at(x, y, a, b);
          table.push_back(std::move(record));
        }
      }
      row.push_back(std::move(table));
    }
    tables.push_back(std::move(row));
  }
  doc["tables"] = std::move(tables);
  if (!metadata.description.empty()) doc["description"] = metadata.description;
  if (!metadata.provenance.empty()) {
    ordered_json prov = ordered_json::object();
    for (const auto& [k, v] : metadata.provenance) prov[k] = v;
    doc["provenance"] = std::move(prov);
  }
  return doc.dump(2) + "\n";
}

}  // namespace

Behavior load_behavior(std::string_view text, double tol,
                       FileMetadata* metadata) {
  json doc = parse_document(text);
  if (detect_kind(doc) == RecordKind::count) {
    throw SchemaError("expected probability records ('p'), found counts");
  }
  parse_metadata(doc, metadata);
  return behavior_from_doc(doc, tol);
}

EmpiricalBehavior load_empirical(std::string_view text,
                                 FileMetadata* metadata) {
  json doc = parse_document(text);
  if (detect_kind(doc) == RecordKind::probability &&
      !require(doc, "tables", "document").empty()) {
    // A document whose tables are all empty is accepted as zero counts.
    bool any_record = false;
    for (const auto& row : doc["tables"]) {
      if (!row.is_array()) continue;
      for (const auto& table : row) any_record = any_record || !table.empty();
    }
    if (any_record) {
      throw SchemaError("expected count records ('count'), found 'p'");
    }
  }
  parse_metadata(doc, metadata);
  return empirical_from_doc(doc);
}

std::variant<Behavior, EmpiricalBehavior> load_any(std::string_view text,
                                                   FileMetadata* metadata) {
  json raw = parse_json(text);
  if (is_dataset(raw)) {
    Dataset dataset = dataset_from_doc(raw);
    if (metadata) {
      metadata->provenance["seed"] = std::to_string(dataset.seed);
      metadata->provenance["policy"] = dataset.policy.name();
      metadata->provenance["runs"] = std::to_string(dataset.runs.size());
      if (auto it = raw.find("rng"); it != raw.end()) {
        metadata->provenance["rng"] = it->get<std::string>();
      }
    }
    return estimate_behavior(dataset);
  }
  const json& doc = raw;
  reject_unknown(doc, {"scenario", "tables", "description", "provenance"},
                 "document");
  parse_metadata(doc, metadata);
  if (detect_kind(doc) == RecordKind::count) return empirical_from_doc(doc);
  return behavior_from_doc(doc, kTolNorm);
}

std::string dump_behavior(const Behavior& behavior,
                          const FileMetadata& metadata) {
  return dump_document(behavior.scenario(), metadata, "p",
                       [&](int x, int y, std::size_t a, std::size_t b) {
                         return behavior.prob(x, y, a, b);
                       });
}

std::string dump_empirical(const EmpiricalBehavior& empirical,
                           const FileMetadata& metadata) {
  return dump_document(empirical.scenario(), metadata, "count",
                       [&](int x, int y, std::size_t a, std::size_t b) {
                         return empirical.count(x, y, a, b);
                       });
}

std::string dump_dataset(const Dataset& dataset) {
  ordered_json head;
  head["scenario"] = scenario_json(dataset.scenario);
  head["seed"] = dataset.seed;
  head["policy"] = dataset.policy.name();
  head["rng"] = kRngDescription;
  // Runs are written one per line by hand; a json array of a million small
  // arrays costs far more memory than the text.
  std::string text = head.dump(2);
  text.pop_back();  // closing brace
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) {
    text.pop_back();
  }
  std::ostringstream out;
  out << text << ",\n  \"runs\": [";
  bool first = true;
  for (const RunRecord& r : dataset.runs) {
    out << (first ? "\n    [" : ",\n    [") << r.x << ", " << r.y << ", "
        << r.a << ", " << r.b << ']';
    first = false;
  }
  out << (first ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

Dataset load_dataset(std::string_view text) {
  json doc = parse_json(text);
  if (!is_dataset(doc)) throw SchemaError("missing field 'runs' in dataset");
  return dataset_from_doc(doc);
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace bellkit
