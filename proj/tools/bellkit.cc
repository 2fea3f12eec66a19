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

// Command-line front end: analyze, simulate, estimate, membership, gap,
// generate, and sweep.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "bellkit/chsh.h"
#include "bellkit/errors.h"
#include "bellkit/feasibility.h"
#include "bellkit/generators.h"
#include "bellkit/io.h"
#include "bellkit/model.h"
#include "bellkit/nosignal.h"
#include "bellkit/report.h"
#include "bellkit/rng.h"
#include "bellkit/simulate.h"
#include "bellkit/sweep.h"

namespace {

using namespace bellkit;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitLp = 3;

struct GlobalFlags {
  std::uint64_t seed = 1;
  double tol = kTolNoSignaling;
  bool json = false;
  std::string output = "-";
};

void emit(const GlobalFlags& flags, const std::string& text) {
  if (flags.output == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(flags.output, std::ios::binary);
  if (!out) throw SchemaError("cannot write '" + flags.output + "'");
  out << text;
}

Behavior load_exact(const std::string& path, FileMetadata* metadata = nullptr) {
  return load_behavior(read_text(path), kTolNorm, metadata);
}

// "x,x',y,y'" with an optional flip.
ChshPermutation parse_permutation(const std::string& text, bool flipped) {
  std::vector<int> fields;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      fields.push_back(std::stoi(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw SchemaError("permutation fields must be integers: '" + text + "'");
    }
  }
  if (fields.size() != 4) {
    throw SchemaError("permutation must be A,A',B,B' (four settings): '" + text + "'");
  }
  return {fields[0], fields[1], fields[2], fields[3], flipped};
}

ChshPermutation max_permutation(const Behavior& behavior) {
  for (const ChshReport& r : all_permutations(behavior)) {
    if (r.is_max) return r.permutation;
  }
  throw DimensionError("the gap needs two settings on each side");
}

std::string join_angles(const std::vector<double>& angles) {
  std::ostringstream out;
  for (std::size_t i = 0; i < angles.size(); ++i) out << (i ? ", " : "") << angles[i];
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bellkit: analyze bipartite measurement correlations"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "Seed for simulation and random generators")
      ->capture_default_str();
  app.add_option("--tol", flags.tol,
                 "Tolerance for no-signaling checks and LP residuals")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", flags.json, "Emit JSON instead of text");
  app.add_option("--output,-o", flags.output, "Output file ('-' for stdout)")
      ->capture_default_str();

  // analyze
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "Full report for a behavior, count, or dataset file");
  std::string analyze_input;
  double z_threshold = kNoSignalingSigmas;
  analyze_cmd->add_option("input", analyze_input, "Input file ('-' for stdin)")
      ->required();
  analyze_cmd->add_option("--z-threshold", z_threshold,
                          "Sigma threshold for no-signaling on count data")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  // simulate
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Draw seeded experiment runs from a behavior");
  std::string simulate_input;
  std::uint64_t runs = 0;
  std::string policy_text = "uniform";
  std::string format = "dataset";
  unsigned workers = 1;
  simulate_cmd->add_option("input", simulate_input, "Behavior file ('-' for stdin)")
      ->required();
  simulate_cmd->add_option("--runs,-n", runs, "Number of runs")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--policy", policy_text,
                           "Setting choice: uniform, round-robin, fixed:X,Y")
      ->capture_default_str();
  simulate_cmd->add_option("--format", format, "dataset (JSON), counts (JSON), or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"dataset", "counts", "csv"}));
  simulate_cmd->add_option("--workers", workers,
                           "Worker threads (output does not depend on this)")
      ->capture_default_str()
      ->check(CLI::Range(1u, 256u));

  // estimate
  auto* estimate_cmd = app.add_subcommand(
      "estimate", "Frequencies and standard errors from a dataset or count file");
  std::string estimate_input;
  estimate_cmd->add_option("input", estimate_input, "Dataset file ('-' for stdin)")
      ->required();

  // membership
  auto* membership_cmd =
      app.add_subcommand("membership", "Local-model membership by linear programming");
  std::string membership_input;
  membership_cmd->add_option("input", membership_input, "Behavior file ('-' for stdin)")
      ->required();

  // gap
  auto* gap_cmd = app.add_subcommand(
      "gap", "Least variation of Bob's joint statistics with Alice's setting");
  std::string gap_input;
  std::string gap_perm;
  bool gap_flip = false;
  gap_cmd->add_option("input", gap_input, "Behavior file ('-' for stdin)")->required();
  gap_cmd->add_option("--perm", gap_perm,
                      "Settings A,A',B,B' (default: the permutation with the largest S)");
  gap_cmd->add_flag("--flip", gap_flip, "Swap Alice's outcomes in the permutation");

  // generate
  auto* generate_cmd = app.add_subcommand("generate", "Write a behavior file");
  bool gen_tsirelson = false, gen_pr = false, gen_uniform = false, gen_quantum = false;
  bool gen_singlet = false, gen_random_lhv = false, gen_random_ns = false;
  std::optional<double> gen_noisy_pr;
  std::string gen_dice, gen_lhv;
  std::vector<double> gen_alice{0.0, 45.0}, gen_bob{22.5, -22.5};
  std::size_t gen_lambdas = 4;
  int gen_alice_settings = 2, gen_bob_settings = 2, gen_outcomes = 2;
  bool gen_deterministic = false;
  auto* source = generate_cmd->add_option_group("source");
  source->add_flag("--tsirelson", gen_tsirelson,
                   "Maximally correlated state at angles 0, 45, 22.5, -22.5 deg");
  source->add_flag("--pr-box", gen_pr, "Perfectly nonlocal box (S = 4)");
  source->add_option("--noisy-pr", gen_noisy_pr, "PR box with visibility V in [0, 1]");
  source->add_flag("--uniform", gen_uniform, "Uniform binary behavior");
  source->add_option("--dice", gen_dice, "Dice: independent, common-roll, paper-demo (an illustrative choice:\n"
                    "faces agree at Bob setting 0 and sum to 7 at setting 1)");
  source->add_flag("--quantum", gen_quantum, "Two-qubit state at --alice/--bob angles");
  source->add_option("--lhv", gen_lhv, "Behavior of the LHV model in FILE");
  source->add_flag("--random-lhv", gen_random_lhv, "Random LHV model (seeded)");
  source->add_flag("--random-ns", gen_random_ns,
                   "Random no-signaling box, 2x2 binary (seeded)");
  source->require_option(1);
  generate_cmd->add_option("--alice", gen_alice, "Alice's angles in degrees")
      ->delimiter(',')
      ->capture_default_str();
  generate_cmd->add_option("--bob", gen_bob, "Bob's angles in degrees")
      ->delimiter(',')
      ->capture_default_str();
  generate_cmd->add_flag("--singlet", gen_singlet,
                         "Use the singlet instead of the maximally correlated state");
  generate_cmd->add_option("--lambdas", gen_lambdas, "Hidden states for --random-lhv")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  generate_cmd->add_option("--alice-settings", gen_alice_settings,
                           "Alice's settings for --random-lhv")
      ->capture_default_str()
      ->check(CLI::Range(1, 64));
  generate_cmd->add_option("--bob-settings", gen_bob_settings,
                           "Bob's settings for --random-lhv")
      ->capture_default_str()
      ->check(CLI::Range(1, 64));
  generate_cmd->add_option("--outcomes", gen_outcomes, "Outcomes per setting for --random-lhv")
      ->capture_default_str()
      ->check(CLI::Range(1, 64));
  generate_cmd->add_flag("--deterministic", gen_deterministic,
                         "Point-mass responses for --random-lhv");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "S against a family parameter, as CSV");
  std::string sweep_family = "quantum";
  std::string sweep_parameter = "bob";
  SweepSpec spec;
  std::optional<double> sweep_from, sweep_to;
  sweep_cmd->add_option("--family", sweep_family, "quantum, pr-noise, or lhv-noise")
      ->capture_default_str();
  sweep_cmd->add_option("--parameter", sweep_parameter,
                        "Angle swept by the quantum family: alice, alice-prime, bob, bob-prime")
      ->capture_default_str();
  sweep_cmd->add_option("--from", sweep_from,
                        "Range start (degrees for quantum; default 0)");
  sweep_cmd->add_option("--to", sweep_to,
                        "Range end (default 45 for quantum, 1 otherwise)");
  sweep_cmd->add_option("--steps", spec.steps, "Grid points including both ends")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (analyze_cmd->parsed()) {
      FileMetadata metadata;
      auto input = load_any(read_text(analyze_input), &metadata);
      AnalyzeOptions options;
      options.tol_ns = flags.tol;
      options.tol_lp = flags.tol;
      options.z_threshold = z_threshold;
      const AnalysisReport report = std::visit(
          [&](const auto& data) { return analyze(data, metadata, options); }, input);
      emit(flags, flags.json ? report_json(report) : report_text(report));
    } else if (simulate_cmd->parsed()) {
      FileMetadata source_meta;
      const Behavior behavior = load_exact(simulate_input, &source_meta);
      const SettingPolicy policy = SettingPolicy::parse(policy_text);
      if (format == "counts") {
        const EmpiricalBehavior counts =
            simulate_counts(behavior, runs, policy, flags.seed, workers);
        FileMetadata meta;
        meta.description = "simulated counts";
        if (!source_meta.description.empty()) {
          meta.description += " of: " + source_meta.description;
        }
        meta.provenance["seed"] = std::to_string(flags.seed);
        meta.provenance["policy"] = policy.name();
        meta.provenance["runs"] = std::to_string(runs);
        meta.provenance["rng"] = kRngDescription;
        emit(flags, dump_empirical(counts, meta));
      } else {
        const Dataset dataset = simulate_runs(behavior, runs, policy, flags.seed, workers);
        emit(flags, format == "csv" ? dataset_csv(dataset) : dump_dataset(dataset));
      }
    } else if (estimate_cmd->parsed()) {
      FileMetadata metadata;
      auto input = load_any(read_text(estimate_input), &metadata);
      if (!std::holds_alternative<EmpiricalBehavior>(input)) {
        throw SchemaError("estimate expects a dataset or count file");
      }
      const auto& counts = std::get<EmpiricalBehavior>(input);
      if (flags.json) {
        emit(flags, dump_empirical(counts, metadata));
      } else {
        std::ostringstream out;
        const Scenario& s = counts.scenario();
        out << "x y  runs        a b  frequency  std.error\n";
        for (int x = 0; x < s.alice_settings(); ++x) {
          for (int y = 0; y < s.bob_settings(); ++y) {
            if (!counts.has_runs(x, y)) {
              out << x << " " << y << "  0           no runs, no estimate\n";
              continue;
            }
            for (std::size_t a = 0; a < s.alice_count(x); ++a) {
              for (std::size_t b = 0; b < s.bob_count(y); ++b) {
                std::string n = std::to_string(counts.runs(x, y));
                n.resize(std::max<std::size_t>(n.size(), 10), ' ');
                out << x << " " << y << "  " << n << "  " << s.alice_outcomes(x)[a]
                    << " " << s.bob_outcomes(y)[b] << "  "
                    << fixed6(counts.frequency(x, y, a, b)) << "   "
                    << fixed6(counts.standard_error(x, y, a, b)) << "\n";
              }
            }
          }
        }
        emit(flags, out.str());
      }
    } else if (membership_cmd->parsed()) {
      const Behavior behavior = load_exact(membership_input);
      const ValidationReport ns = check_no_signaling(behavior, flags.tol);
      if (!ns.no_signaling()) {
        throw NoSignalingError(
            "behavior signals; local membership is undefined",
            std::max(ns.max_deviation_a_to_b, ns.max_deviation_b_to_a));
      }
      const MembershipResult result = local_membership(behavior, flags.tol);
      emit(flags, flags.json ? membership_json(result, behavior.scenario())
                             : membership_text(result, behavior.scenario()));
    } else if (gap_cmd->parsed()) {
      const Behavior behavior = load_exact(gap_input);
      const ChshPermutation perm =
          gap_perm.empty() ? max_permutation(behavior) : parse_permutation(gap_perm, gap_flip);
      const GapAnalysis gap = gap_analysis(behavior, perm, flags.tol);
      emit(flags, flags.json ? gap_json(gap) : gap_text(gap));
    } else if (generate_cmd->parsed()) {
      FileMetadata meta;
      std::optional<Behavior> behavior;
      if (gen_tsirelson) {
        behavior = quantum_behavior(tsirelson_setup());
        meta.description =
            "maximally correlated two-qubit state, Alice at 0 and 45 deg, Bob at 22.5 "
            "and -22.5 deg";
        meta.provenance["generator"] = "quantum";
      } else if (gen_pr) {
        behavior = pr_box();
        meta.description = "PR box: A = B except A' != B'";
        meta.provenance["generator"] = "pr-box";
      } else if (gen_noisy_pr) {
        behavior = noisy_pr_box(*gen_noisy_pr);
        meta.description = "PR box mixed with white noise";
        meta.provenance["generator"] = "noisy-pr";
        meta.provenance["visibility"] = std::to_string(*gen_noisy_pr);
      } else if (gen_uniform) {
        behavior = uniform_binary();
        meta.description = "uniform binary behavior";
        meta.provenance["generator"] = "uniform";
      } else if (!gen_dice.empty()) {
        behavior = dice_behavior(parse_dice_kind(gen_dice));
        meta.description = "dice: " + gen_dice;
        meta.provenance["generator"] = "dice";
      } else if (gen_quantum) {
        QuantumSetup setup;
        setup.state = gen_singlet ? QuantumSetup::singlet()
                                  : QuantumSetup::maximally_correlated();
        for (double a : gen_alice) setup.alice_angles.push_back(degrees(a));
        for (double b : gen_bob) setup.bob_angles.push_back(degrees(b));
        behavior = quantum_behavior(setup);
        meta.description = std::string(gen_singlet ? "singlet" : "maximally correlated") +
                           " state, Alice at " + join_angles(gen_alice) +
                           " deg, Bob at " + join_angles(gen_bob) + " deg";
        meta.provenance["generator"] = "quantum";
      } else if (!gen_lhv.empty()) {
        Scenario scenario = Scenario::binary();
        const LhvModel model = load_lhv_model(read_text(gen_lhv), &scenario);
        behavior = lhv_behavior(model, scenario);
        meta.description = "local hidden-variable model from " + gen_lhv;
        meta.provenance["generator"] = "lhv";
      } else if (gen_random_lhv) {
        OutcomeSet labels;
        for (int k = 0; k < gen_outcomes; ++k) labels.push_back(k);
        const Scenario scenario =
            Scenario::uniform(gen_alice_settings, gen_bob_settings, labels);
        Xoshiro256 rng = Xoshiro256::for_stream(flags.seed, 0);
        const LhvModel model =
            random_lhv_model(scenario, gen_lambdas, rng, gen_deterministic);
        behavior = lhv_behavior(model, scenario);
        meta.description = "random local hidden-variable model";
        meta.provenance["generator"] = "random-lhv";
        meta.provenance["seed"] = std::to_string(flags.seed);
        meta.provenance["lambdas"] = std::to_string(gen_lambdas);
      } else if (gen_random_ns) {
        Xoshiro256 rng = Xoshiro256::for_stream(flags.seed, 0);
        behavior = random_no_signaling_box(rng);
        meta.description = "random no-signaling box";
        meta.provenance["generator"] = "random-ns";
        meta.provenance["seed"] = std::to_string(flags.seed);
      }
      emit(flags, dump_behavior(*behavior, meta));
    } else if (sweep_cmd->parsed()) {
      spec.family = parse_sweep_family(sweep_family);
      spec.angle = parse_angle_parameter(sweep_parameter);
      const bool angles = spec.family == SweepFamily::quantum_angle;
      spec.from = sweep_from.value_or(0.0);
      spec.to = sweep_to.value_or(angles ? 45.0 : 1.0);
      const std::vector<SweepRow> rows = sweep(spec);
      if (flags.json) {
        std::ostringstream out;
        out.precision(17);
        out << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
          out << "  {\"parameter\": " << rows[i].parameter << ", \"S\": " << rows[i].S
              << ", \"probability_form\": " << rows[i].probability_form
              << ", \"gap_bound\": " << rows[i].gap_bound << "}"
              << (i + 1 < rows.size() ? ",\n" : "\n");
        }
        out << "]\n";
        emit(flags, out.str());
      } else {
        emit(flags, sweep_csv(rows));
      }
    }
  } catch (const LpFailure& e) {
    std::cerr << "bellkit: LP failure: " << e.what() << " (residual " << e.residual()
              << ")\n";
    return kExitLp;
  } catch (const std::exception& e) {
    std::cerr << "bellkit: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
