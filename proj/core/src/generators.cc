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

#include "bellkit/generators.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "bellkit/errors.h"
#include "json.hpp"

namespace bellkit {
namespace {

void check_distribution(const std::vector<double>& dist, std::size_t size,
                        const std::string& where) {
  if (dist.size() != size) {
    throw DimensionError(where + " has " + std::to_string(dist.size()) +
                         " entries, expected " + std::to_string(size));
  }
  double sum = 0.0;
  for (double p : dist) {
    if (!std::isfinite(p) || p < -kTolNorm) {
      throw NormalizationError(where + " has a negative or non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kTolNorm) {
    std::ostringstream msg;
    msg << where << " sums to " << sum;
    throw NormalizationError(msg.str());
  }
}

void check_responses(const std::vector<std::vector<std::vector<double>>>& response,
                     int settings, std::size_t lambdas,
                     const std::function<std::size_t(int)>& outcomes,
                     const char* lab) {
  if (response.size() != static_cast<std::size_t>(settings)) {
    throw DimensionError(std::string(lab) + " responses must cover " +
                         std::to_string(settings) + " settings");
  }
  for (int s = 0; s < settings; ++s) {
    if (response[s].size() != lambdas) {
      throw DimensionError(std::string(lab) + " setting " + std::to_string(s) +
                           " needs one response per hidden value");
    }
    for (std::size_t l = 0; l < lambdas; ++l) {
      std::ostringstream where;
      where << lab << " response [" << s << "][" << l << "]";
      check_distribution(response[s][l], outcomes(s), where.str());
    }
  }
}

std::vector<double> dirichlet(std::size_t size, Xoshiro256& rng) {
  std::vector<double> out(size);
  double total = 0.0;
  for (double& v : out) {
    v = -std::log1p(-rng.uniform());
    total += v;
  }
  for (double& v : out) v /= total;
  return out;
}

std::vector<double> point_mass(std::size_t size, std::size_t at) {
  std::vector<double> out(size, 0.0);
  out[at] = 1.0;
  return out;
}

}  // namespace

void LhvModel::validate(const Scenario& scenario) const {
  if (weights.empty()) throw DimensionError("LHV model has no hidden values");
  check_distribution(weights, weights.size(), "hidden-variable weights");
  check_responses(alice_response, scenario.alice_settings(), weights.size(),
                  [&](int x) { return scenario.alice_count(x); }, "Alice");
  check_responses(bob_response, scenario.bob_settings(), weights.size(),
                  [&](int y) { return scenario.bob_count(y); }, "Bob");
}

Behavior lhv_behavior(const LhvModel& model, const Scenario& scenario) {
  model.validate(scenario);
  return Behavior::from_function(
      scenario, [&](int x, int y, std::size_t a, std::size_t b) {
        double p = 0.0;
        for (std::size_t l = 0; l < model.lambda_count(); ++l) {
          p += model.weights[l] * model.alice_response[x][l][a] *
               model.bob_response[y][l][b];
        }
        return p;
      });
}

LhvJoints lhv_compatible_joints(const LhvModel& model, const Scenario& scenario) {
  model.validate(scenario);
  const int n = scenario.bob_settings();
  const MixedRadix bobs = bob_layout(scenario);

  // Per hidden value, the product prod_k p(b_k | lambda) over Bob tuples.
  std::vector<std::vector<double>> bob_products(model.lambda_count(),
                                                std::vector<double>(bobs.size()));
  std::vector<std::size_t> digits(bobs.digits());
  for (std::size_t l = 0; l < model.lambda_count(); ++l) {
    for (std::size_t i = 0; i < bobs.size(); ++i) {
      bobs.decode(i, digits);
      double p = 1.0;
      for (int k = 0; k < n; ++k) p *= model.bob_response[k][l][digits[k]];
      bob_products[l][i] = p;
    }
  }

  LhvJoints joints;
  joints.bob_marginal.assign(bobs.size(), 0.0);
  for (std::size_t l = 0; l < model.lambda_count(); ++l) {
    for (std::size_t i = 0; i < bobs.size(); ++i) {
      joints.bob_marginal[i] += model.weights[l] * bob_products[l][i];
    }
  }
  for (int j = 0; j < scenario.alice_settings(); ++j) {
    MixedRadix layout = compatible_layout(scenario, j);
    std::vector<double> table(layout.size(), 0.0);
    const std::size_t block = bobs.size();
    for (std::size_t a = 0; a < scenario.alice_count(j); ++a) {
      for (std::size_t i = 0; i < block; ++i) {
        double q = 0.0;
        for (std::size_t l = 0; l < model.lambda_count(); ++l) {
          q += model.weights[l] * model.alice_response[j][l][a] * bob_products[l][i];
        }
        table[a * block + i] = q;
      }
    }
    joints.per_alice.emplace_back(j, std::move(layout), std::move(table));
  }
  return joints;
}

LhvModel random_lhv_model(const Scenario& scenario, std::size_t lambda_count,
                          Xoshiro256& rng, bool deterministic) {
  if (lambda_count == 0) throw DimensionError("LHV model needs a hidden value");
  LhvModel model;
  model.weights = dirichlet(lambda_count, rng);
  auto response = [&](std::size_t outcomes) {
    return deterministic ? point_mass(outcomes, rng.below(outcomes))
                         : dirichlet(outcomes, rng);
  };
  model.alice_response.resize(scenario.alice_settings());
  for (int x = 0; x < scenario.alice_settings(); ++x) {
    for (std::size_t l = 0; l < lambda_count; ++l) {
      model.alice_response[x].push_back(response(scenario.alice_count(x)));
    }
  }
  model.bob_response.resize(scenario.bob_settings());
  for (int y = 0; y < scenario.bob_settings(); ++y) {
    for (std::size_t l = 0; l < lambda_count; ++l) {
      model.bob_response[y].push_back(response(scenario.bob_count(y)));
    }
  }
  return model;
}

LhvModel load_lhv_model(std::string_view text, Scenario* scenario) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("LHV model is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("LHV model must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "scenario" && it.key() != "weights" &&
        it.key() != "alice_response" && it.key() != "bob_response") {
      throw SchemaError("unknown field '" + it.key() + "' in LHV model");
    }
  }
  for (const char* key : {"scenario", "weights", "alice_response", "bob_response"}) {
    if (!doc.contains(key)) {
      throw SchemaError(std::string("LHV model is missing '") + key + "'");
    }
  }
  const json& sc = doc["scenario"];
  if (!sc.is_object() || !sc.contains("alice_outcomes") || !sc.contains("bob_outcomes") ||
      sc.size() != 2) {
    throw SchemaError("LHV model 'scenario' needs alice_outcomes and bob_outcomes only");
  }
  LhvModel model;
  try {
    Scenario parsed(sc["alice_outcomes"].get<std::vector<OutcomeSet>>(),
                    sc["bob_outcomes"].get<std::vector<OutcomeSet>>());
    model.weights = doc["weights"].get<std::vector<double>>();
    model.alice_response =
        doc["alice_response"].get<std::vector<std::vector<std::vector<double>>>>();
    model.bob_response =
        doc["bob_response"].get<std::vector<std::vector<std::vector<double>>>>();
    model.validate(parsed);
    if (scenario) *scenario = std::move(parsed);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed LHV model: ") + e.what());
  } catch (const DimensionError& e) {
    throw SchemaError(std::string("LHV model does not fit its scenario: ") + e.what());
  }
  return model;
}

std::string dump_lhv_model(const LhvModel& model, const Scenario& scenario) {
  using nlohmann::ordered_json;
  ordered_json doc;
  std::vector<OutcomeSet> alice, bob;
  for (int x = 0; x < scenario.alice_settings(); ++x) alice.push_back(scenario.alice_outcomes(x));
  for (int y = 0; y < scenario.bob_settings(); ++y) bob.push_back(scenario.bob_outcomes(y));
  doc["scenario"]["alice_outcomes"] = alice;
  doc["scenario"]["bob_outcomes"] = bob;
  doc["weights"] = model.weights;
  doc["alice_response"] = model.alice_response;
  doc["bob_response"] = model.bob_response;
  return doc.dump(2) + "\n";
}

Behavior pr_box() { return pr_box(0, 0, 0); }

Behavior pr_box(int alpha, int beta, int gamma) {
  return Behavior::from_function(
      Scenario::binary(), [=](int x, int y, std::size_t a, std::size_t b) {
        const int parity = (x * y) ^ (alpha * x) ^ (beta * y) ^ gamma;
        return static_cast<int>(a ^ b) == (parity & 1) ? 0.5 : 0.0;
      });
}

Behavior uniform_binary() {
  return Behavior::from_function(Scenario::binary(),
                                 [](int, int, std::size_t, std::size_t) { return 0.25; });
}

Behavior noisy_pr_box(double visibility) {
  return mixture(pr_box(), uniform_binary(), visibility);
}

Behavior random_no_signaling_box(Xoshiro256& rng) {
  // A sparse mixture: Dirichlet(1) weights on 1 to 4 distinct vertices. A
  // dense mixture of all 24 sits near the center and almost never violates.
  std::vector<std::size_t> order(24);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t support = 1 + rng.below(4);
  for (std::size_t i = 0; i < support; ++i) {
    std::swap(order[i], order[i + rng.below(24 - i)]);
  }
  const std::vector<double> mix = dirichlet(support, rng);
  std::vector<double> weights(24, 0.0);
  for (std::size_t i = 0; i < support; ++i) weights[order[i]] = mix[i];
  std::vector<double> entries(Scenario::binary().entry_count(), 0.0);
  std::size_t w = 0;
  // Deterministic vertices: a(x) = (ra >> x) & 1, b(y) = (rb >> y) & 1.
  for (int ra = 0; ra < 4; ++ra) {
    for (int rb = 0; rb < 4; ++rb, ++w) {
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const int a = (ra >> x) & 1;
          const int b = (rb >> y) & 1;
          entries[4 * (2 * x + y) + 2 * a + b] += weights[w];
        }
      }
    }
  }
  for (int alpha = 0; alpha < 2; ++alpha) {
    for (int beta = 0; beta < 2; ++beta) {
      for (int gamma = 0; gamma < 2; ++gamma, ++w) {
        Behavior box = pr_box(alpha, beta, gamma);
        for (std::size_t e = 0; e < entries.size(); ++e) {
          entries[e] += weights[w] * box.entries()[e];
        }
      }
    }
  }
  return Behavior(Scenario::binary(), std::move(entries));
}

DiceKind parse_dice_kind(std::string_view name) {
  if (name == "independent") return DiceKind::independent;
  if (name == "common-roll") return DiceKind::common_roll;
  if (name == "paper-demo") return DiceKind::paper_demo;
  throw SchemaError("unknown dice kind '" + std::string(name) +
                    "' (expected independent, common-roll, paper-demo)");
}

Behavior dice_behavior(DiceKind kind) {
  const OutcomeSet faces{1, 2, 3, 4, 5, 6};
  return Behavior::from_function(
      Scenario::uniform(2, 2, faces),
      [=](int, int y, std::size_t a, std::size_t b) {
        const int fa = faces[a];
        const int fb = faces[b];
        switch (kind) {
          case DiceKind::independent:
            return 1.0 / 36.0;
          case DiceKind::common_roll:
            return fa == fb ? 1.0 / 6.0 : 0.0;
          case DiceKind::paper_demo:
            return (y == 1 ? fb == 7 - fa : fb == fa) ? 1.0 / 6.0 : 0.0;
        }
        return 0.0;
      });
}

std::array<std::complex<double>, 4> QuantumSetup::maximally_correlated() {
  const double h = 1.0 / std::sqrt(2.0);
  return {std::complex<double>(h), 0.0, 0.0, std::complex<double>(h)};
}

std::array<std::complex<double>, 4> QuantumSetup::singlet() {
  const double h = 1.0 / std::sqrt(2.0);
  return {0.0, std::complex<double>(h), std::complex<double>(-h), 0.0};
}

Behavior quantum_behavior(const QuantumSetup& setup) {
  double norm = 0.0;
  for (const auto& amp : setup.state) norm += std::norm(amp);
  if (std::abs(norm - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "two-qubit state has squared norm " << norm;
    throw DimensionError(msg.str());
  }
  if (setup.alice_angles.empty() || setup.bob_angles.empty()) {
    throw DimensionError("each lab needs at least one measurement angle");
  }
  for (double t : setup.alice_angles) {
    if (!std::isfinite(t)) throw DimensionError("non-finite Alice angle");
  }
  for (double t : setup.bob_angles) {
    if (!std::isfinite(t)) throw DimensionError("non-finite Bob angle");
  }
  // Outcome index 0 is label 0 (no pass), index 1 is label 1 (pass).
  auto basis = [](double t, std::size_t outcome) -> std::array<double, 2> {
    if (outcome == 1) return {std::cos(t), std::sin(t)};
    return {-std::sin(t), std::cos(t)};
  };
  const int m = static_cast<int>(setup.alice_angles.size());
  const int n = static_cast<int>(setup.bob_angles.size());
  return Behavior::from_function(
      Scenario::binary(m, n), [&](int x, int y, std::size_t a, std::size_t b) {
        const auto u = basis(setup.alice_angles[x], a);
        const auto v = basis(setup.bob_angles[y], b);
        // <u (x) v | psi> with real measurement vectors.
        const std::complex<double> amp =
            u[0] * v[0] * setup.state[0] + u[0] * v[1] * setup.state[1] +
            u[1] * v[0] * setup.state[2] + u[1] * v[1] * setup.state[3];
        return std::norm(amp);
      },
      1e-12);
}

QuantumSetup tsirelson_setup() {
  QuantumSetup setup;
  setup.state = QuantumSetup::maximally_correlated();
  setup.alice_angles = {degrees(0.0), degrees(45.0)};
  setup.bob_angles = {degrees(22.5), degrees(-22.5)};
  return setup;
}

}  // namespace bellkit
