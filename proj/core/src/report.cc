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

#include "bellkit/report.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "bellkit/errors.h"
#include "bellkit/simulate.h"
#include "json.hpp"

namespace bellkit {
namespace {

using nlohmann::ordered_json;

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

ordered_json permutation_json(const ChshPermutation& p) {
  ordered_json out;
  out["label"] = p.label();
  out["alice"] = p.alice;
  out["alice_prime"] = p.alice_prime;
  out["bob"] = p.bob;
  out["bob_prime"] = p.bob_prime;
  out["flipped"] = p.flipped;
  return out;
}

ordered_json chsh_json(const ChshReport& r, std::optional<double> sigma) {
  ordered_json out;
  out["permutation"] = permutation_json(r.permutation);
  out["p_equal_ab"] = r.terms.equal_ab;
  out["p_equal_ab_prime"] = r.terms.equal_ab_prime;
  out["p_equal_a_prime_b"] = r.terms.equal_a_prime_b;
  out["p_unequal_a_prime_b_prime"] = r.terms.unequal_a_prime_b_prime;
  out["probability_form"] = r.probability_form_lhs;
  out["S"] = r.correlator_S;
  if (sigma) out["sigma_S"] = *sigma;
  out["violation"] = r.violation;
  out["gap_lower_bound"] = r.gap_lower_bound;
  ordered_json c;
  c["q_equal_lower"] = r.conundrum.q_equal_lower;
  c["q_prime_unequal_lower"] = r.conundrum.q_prime_unequal_lower;
  c["generalized_rhs"] = r.conundrum.generalized_rhs;
  c["basic_conundrum"] = r.conundrum.basic_conundrum;
  c["generalized_conundrum"] = r.conundrum.generalized_conundrum;
  out["conundrum"] = std::move(c);
  out["max"] = r.is_max;
  return out;
}

ordered_json membership_object(const MembershipResult& m, const Scenario& s) {
  ordered_json out;
  out["applicable"] = true;
  out["status"] = m.status == MembershipStatus::inside ? "inside" : "outside";
  out["boundary"] = m.boundary;
  out["residual"] = m.residual;
  out["noise_robustness"] = m.noise_robustness;
  if (m.status == MembershipStatus::inside) {
    const MixedRadix layout = global_layout(s);
    const auto m_settings = static_cast<std::size_t>(s.alice_settings());
    ordered_json vertices = ordered_json::array();
    for (std::size_t i = 0; i < m.weights.size(); ++i) {
      if (m.weights[i] <= 1e-12) continue;
      const auto digits = layout.decode(i);
      ordered_json alice = ordered_json::array();
      ordered_json bob = ordered_json::array();
      for (std::size_t d = 0; d < digits.size(); ++d) {
        if (d < m_settings) {
          alice.push_back(s.alice_outcomes(static_cast<int>(d))[digits[d]]);
        } else {
          bob.push_back(s.bob_outcomes(static_cast<int>(d - m_settings))[digits[d]]);
        }
      }
      ordered_json v;
      v["alice"] = std::move(alice);
      v["bob"] = std::move(bob);
      v["weight"] = m.weights[i];
      vertices.push_back(std::move(v));
    }
    out["decomposition"] = std::move(vertices);
  }
  if (m.certificate) {
    const BellFunctional& f = *m.certificate;
    ordered_json coefficients = ordered_json::array();
    for (int x = 0; x < s.alice_settings(); ++x) {
      for (int y = 0; y < s.bob_settings(); ++y) {
        for (std::size_t a = 0; a < s.alice_count(x); ++a) {
          for (std::size_t b = 0; b < s.bob_count(y); ++b) {
            ordered_json c;
            c["x"] = x;
            c["y"] = y;
            c["a"] = s.alice_outcomes(x)[a];
            c["b"] = s.bob_outcomes(y)[b];
            c["c"] = f.coefficients[s.table_offset(x, y) + a * s.bob_count(y) + b];
            coefficients.push_back(std::move(c));
          }
        }
      }
    }
    ordered_json cert;
    cert["classical_bound"] = f.classical_bound;
    cert["value"] = f.value;
    cert["coefficients"] = std::move(coefficients);
    out["certificate"] = std::move(cert);
  }
  return out;
}

ordered_json gap_object(const GapAnalysis& g) {
  ordered_json out;
  out["applicable"] = true;
  out["permutation"] = permutation_json(g.permutation);
  out["lower_bound"] = g.lower_bound;
  out["min_invariance_gap"] = g.min_invariance_gap;
  out["min_tv_separation"] = g.min_tv_separation;
  out["compatible_gap"] = g.compatible_gap;
  out["saturated"] = g.saturated;
  return out;
}

ordered_json not_applicable(const std::string& reason) {
  ordered_json out;
  out["applicable"] = false;
  out["reason"] = reason;
  return out;
}

const char* pass_fail(bool ok) { return ok ? "pass" : "FAIL"; }
const char* yes_no(bool ok) { return ok ? "yes" : "no"; }

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

}  // namespace

std::string fixed6(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::fabs(value) < 5e-7) value = 0.0;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

GapAnalysis gap_analysis(const Behavior& behavior, const ChshPermutation& perm,
                         double tol_ns) {
  check_permutation(behavior.scenario(), perm);
  GapAnalysis out;
  out.permutation = perm;
  out.lower_bound = gap_lower_bound(behavior, perm);
  out.min_invariance_gap = min_invariance_gap(behavior, perm, tol_ns);
  out.min_tv_separation = min_tv_separation(behavior, perm, tol_ns);
  const Scenario& s = behavior.scenario();
  const CompatibleJoint q = build_compatible_joint(behavior, perm.alice, tol_ns);
  const CompatibleJoint q_prime =
      build_compatible_joint(behavior, perm.alice_prime, tol_ns);
  out.compatible_gap = bob_equality(q, s, perm.bob, perm.bob_prime) -
                       bob_equality(q_prime, s, perm.bob, perm.bob_prime);
  out.saturated = out.lower_bound > kBoundaryBand &&
                  out.min_invariance_gap - out.lower_bound <= kBoundaryBand;
  return out;
}

AnalysisReport analyze(const Behavior& behavior, const FileMetadata& metadata,
                       const AnalyzeOptions& options) {
  AnalysisReport report(behavior.scenario());
  report.metadata = metadata;
  report.validation = check_no_signaling(behavior, options.tol_ns);
  report.permutations = all_permutations(behavior);
  for (std::size_t i = 0; i < report.permutations.size(); ++i) {
    if (report.permutations[i].is_max) report.max_index = i;
  }
  if (!report.validation.no_signaling()) {
    const std::string reason =
        "behavior signals beyond tolerance, so no compatible joints exist";
    report.membership_note = reason;
    report.gap_note = reason;
    return report;
  }
  report.membership = local_membership(behavior, options.tol_lp);
  report.negativity = signed_invariant_joint(behavior, options.tol_lp).negativity;
  if (report.max_index) {
    report.gap = gap_analysis(
        behavior, report.permutations[*report.max_index].permutation, options.tol_ns);
  } else {
    report.gap_note = "needs two settings on each side";
  }
  return report;
}

AnalysisReport analyze(const EmpiricalBehavior& empirical,
                       const FileMetadata& metadata, const AnalyzeOptions& options) {
  AnalysisReport report(empirical.scenario());
  report.empirical = true;
  report.metadata = metadata;
  report.validation = check_no_signaling(empirical, options.z_threshold);
  for (std::uint64_t c : empirical.counts()) report.total_runs += c;
  double best = -std::numeric_limits<double>::infinity();
  for (const ChshPermutation& perm : enumerate_permutations(empirical.scenario())) {
    bool usable = true;
    for (int x : {perm.alice, perm.alice_prime}) {
      for (int y : {perm.bob, perm.bob_prime}) usable = usable && empirical.has_runs(x, y);
    }
    if (!usable) continue;
    EmpiricalChsh chsh = empirical_chsh(empirical, perm);
    if (chsh.report.correlator_S > best) {
      best = chsh.report.correlator_S;
      report.max_index = report.permutations.size();
    }
    report.permutations.push_back(chsh.report);
    report.sigma_S.push_back(chsh.sigma_S);
  }
  for (std::size_t i = 0; i < report.permutations.size(); ++i) {
    report.permutations[i].is_max = report.max_index == i;
  }
  const std::string reason =
      "count data: relative frequencies are not exactly no-signaling; "
      "see the CHSH section with error bars";
  report.membership_note = reason;
  report.gap_note = reason;
  return report;
}

std::string report_json(const AnalysisReport& r) {
  ordered_json doc;
  doc["tool"] = "bellkit";
  doc["version"] = kVersion;
  doc["rng"] = kRngDescription;

  ordered_json input;
  input["kind"] = r.empirical ? "empirical" : "behavior";
  input["alice_settings"] = r.scenario.alice_settings();
  input["bob_settings"] = r.scenario.bob_settings();
  input["scenario"] = scenario_json(r.scenario);
  if (r.empirical) input["total_runs"] = r.total_runs;
  if (!r.metadata.description.empty()) input["description"] = r.metadata.description;
  if (!r.metadata.provenance.empty()) {
    ordered_json prov = ordered_json::object();
    for (const auto& [k, v] : r.metadata.provenance) prov[k] = v;
    input["provenance"] = std::move(prov);
  }
  doc["input"] = std::move(input);

  const ValidationReport& v = r.validation;
  ordered_json ns;
  ns["mode"] = v.z_score_mode ? "z-score" : "tolerance";
  ns["threshold"] = v.tolerance;
  ns["pass"] = v.no_signaling();
  ordered_json b_to_a;
  b_to_a["pass"] = v.no_signaling_b_to_a;
  b_to_a["max_deviation"] = v.max_deviation_b_to_a;
  if (v.z_score_mode) b_to_a["max_z"] = v.max_z_b_to_a;
  ordered_json a_to_b;
  a_to_b["pass"] = v.no_signaling_a_to_b;
  a_to_b["max_deviation"] = v.max_deviation_a_to_b;
  if (v.z_score_mode) a_to_b["max_z"] = v.max_z_a_to_b;
  ns["bob_to_alice"] = std::move(b_to_a);
  ns["alice_to_bob"] = std::move(a_to_b);
  doc["no_signaling"] = std::move(ns);

  ordered_json chsh;
  ordered_json perms = ordered_json::array();
  for (std::size_t i = 0; i < r.permutations.size(); ++i) {
    perms.push_back(chsh_json(r.permutations[i],
                              r.empirical ? std::optional(r.sigma_S[i]) : std::nullopt));
  }
  if (r.max_index) {
    const ChshReport& best = r.permutations[*r.max_index];
    ordered_json summary;
    summary["permutation"] = best.permutation.label();
    summary["S"] = best.correlator_S;
    summary["probability_form"] = best.probability_form_lhs;
    summary["violation"] = best.correlator_S > 2.0;
    if (r.empirical) {
      const double sigma = r.sigma_S[*r.max_index];
      summary["sigma_S"] = sigma;
      summary["significance_sigmas"] =
          sigma > 0.0 ? (best.correlator_S - 2.0) / sigma : 0.0;
    }
    chsh["max"] = std::move(summary);
  } else {
    chsh["max"] = nullptr;
  }
  chsh["permutations"] = std::move(perms);
  doc["chsh"] = std::move(chsh);

  doc["membership"] = r.membership ? membership_object(*r.membership, r.scenario)
                                   : not_applicable(r.membership_note);
  doc["gap"] = r.gap ? gap_object(*r.gap) : not_applicable(r.gap_note);
  if (r.negativity) {
    ordered_json signed_joint;
    signed_joint["applicable"] = true;
    signed_joint["negativity"] = *r.negativity;
    doc["signed_joint"] = std::move(signed_joint);
  } else {
    doc["signed_joint"] = not_applicable(r.membership_note);
  }
  return doc.dump(2) + "\n";
}

std::string membership_json(const MembershipResult& result, const Scenario& scenario) {
  return membership_object(result, scenario).dump(2) + "\n";
}

std::string gap_json(const GapAnalysis& gap) { return gap_object(gap).dump(2) + "\n"; }

std::string membership_text(const MembershipResult& m, const Scenario& s) {
  std::ostringstream out;
  out << "membership\n";
  out << "  status: "
      << (m.status == MembershipStatus::inside ? "inside (local)" : "outside (nonlocal)")
      << "\n";
  out << "  boundary: " << yes_no(m.boundary) << "\n";
  if (m.status == MembershipStatus::inside) {
    std::size_t support = 0;
    for (double w : m.weights) support += w > 1e-12 ? 1 : 0;
    out << "  reconstruction error: " << fixed6(m.residual) << "\n";
    out << "  vertices in decomposition: " << support << "\n";
  } else {
    out << "  noise robustness: " << fixed6(m.noise_robustness) << "\n";
  }
  if (m.certificate) {
    const BellFunctional& f = *m.certificate;
    out << "  certificate: value " << fixed6(f.value) << " > classical bound "
        << fixed6(f.classical_bound) << " (margin " << fixed6(m.residual) << ")\n";
    for (int x = 0; x < s.alice_settings(); ++x) {
      for (int y = 0; y < s.bob_settings(); ++y) {
        out << "    (x=" << x << ", y=" << y << "):";
        for (std::size_t a = 0; a < s.alice_count(x); ++a) {
          for (std::size_t b = 0; b < s.bob_count(y); ++b) {
            out << " c[" << s.alice_outcomes(x)[a] << "," << s.bob_outcomes(y)[b]
                << "]=" << fixed6(f.coefficients[s.table_offset(x, y) +
                                                 a * s.bob_count(y) + b]);
          }
        }
        out << "\n";
      }
    }
  }
  return out.str();
}

std::string gap_text(const GapAnalysis& g) {
  std::ostringstream out;
  out << "invariance gap (" << g.permutation.label() << ")\n";
  out << "  lower bound (S-2)/2: " << fixed6(g.lower_bound) << "\n";
  out << "  least q(B=B') - q'(B=B'): " << fixed6(g.min_invariance_gap) << "\n";
  out << "  least TV(q, q') on (B, B'): " << fixed6(g.min_tv_separation) << "\n";
  out << "  product joints gap: " << fixed6(g.compatible_gap) << "\n";
  out << "  bound saturated: " << yes_no(g.saturated) << "\n";
  return out.str();
}

std::string report_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "bellkit " << kVersion << " analysis\n";
  out << "input: " << (r.empirical ? "counts" : "behavior") << ", "
      << r.scenario.alice_settings() << " Alice x " << r.scenario.bob_settings()
      << " Bob settings";
  if (r.empirical) out << ", " << r.total_runs << " runs";
  out << "\n";
  if (!r.metadata.description.empty()) out << "description: " << r.metadata.description << "\n";
  for (const auto& [k, v] : r.metadata.provenance) out << k << ": " << v << "\n";
  out << "rng: " << kRngDescription << "\n\n";

  const ValidationReport& v = r.validation;
  out << "no-signaling: " << (v.no_signaling() ? "pass" : "FAIL (behavior signals)");
  if (v.z_score_mode) {
    out << " (" << fixed6(v.tolerance) << " sigma threshold)\n";
    out << "  Bob -> Alice: " << pass_fail(v.no_signaling_b_to_a) << ", max deviation "
        << fixed6(v.max_deviation_b_to_a) << ", max z " << fixed6(v.max_z_b_to_a) << "\n";
    out << "  Alice -> Bob: " << pass_fail(v.no_signaling_a_to_b) << ", max deviation "
        << fixed6(v.max_deviation_a_to_b) << ", max z " << fixed6(v.max_z_a_to_b) << "\n";
  } else {
    char tol[32];
    std::snprintf(tol, sizeof tol, "%.1e", v.tolerance);
    out << " (tolerance " << tol << ")\n";
    out << "  Bob -> Alice: " << pass_fail(v.no_signaling_b_to_a) << ", max deviation "
        << fixed6(v.max_deviation_b_to_a) << "\n";
    out << "  Alice -> Bob: " << pass_fail(v.no_signaling_a_to_b) << ", max deviation "
        << fixed6(v.max_deviation_a_to_b) << "\n";
  }
  out << "\n";

  if (r.permutations.empty()) {
    out << "CHSH: not applicable (needs two settings on each side)\n\n";
  } else {
    out << "CHSH (* marks the largest S)\n";
    out << "  " << pad("permutation", 25) << pad("p(A=B)", 10) << pad("p(A=B')", 10)
        << pad("p(A'=B)", 10) << pad("p(A'!=B')", 10) << pad("sum", 10) << pad("S", 10);
    if (r.empirical) out << pad("sigma_S", 10);
    out << "(S-2)/2\n";
    for (std::size_t i = 0; i < r.permutations.size(); ++i) {
      const ChshReport& c = r.permutations[i];
      out << (c.is_max ? "* " : "  ") << pad(c.permutation.label(), 25)
          << pad(fixed6(c.terms.equal_ab), 10) << pad(fixed6(c.terms.equal_ab_prime), 10)
          << pad(fixed6(c.terms.equal_a_prime_b), 10)
          << pad(fixed6(c.terms.unequal_a_prime_b_prime), 10)
          << pad(fixed6(c.probability_form_lhs), 10) << pad(fixed6(c.correlator_S), 10);
      if (r.empirical) out << pad(fixed6(r.sigma_S[i]), 10);
      out << fixed6(c.gap_lower_bound) << "\n";
    }
    const ChshReport& best = r.permutations[*r.max_index];
    out << "\n";
    out << "largest S: " << fixed6(best.correlator_S);
    if (r.empirical) out << " +/- " << fixed6(r.sigma_S[*r.max_index]);
    out << " (" << (best.correlator_S > 2.0 ? "violates" : "satisfies")
        << " the classical bound 2)\n";
    out << "conundrum (" << best.permutation.label() << ")\n";
    out << "  q(B=B') >= " << fixed6(best.conundrum.q_equal_lower) << "\n";
    out << "  q'(B!=B') >= " << fixed6(best.conundrum.q_prime_unequal_lower) << "\n";
    out << "  q(B=B') - q'(B=B') >= " << fixed6(best.conundrum.generalized_rhs) << "\n";
    out << "  all four above 3/4: " << yes_no(best.conundrum.basic_conundrum) << "\n";
    out << "  joint must vary with Alice's setting: "
        << yes_no(best.conundrum.generalized_conundrum) << "\n";
    out << "\n";
  }

  if (r.membership) {
    out << membership_text(*r.membership, r.scenario);
  } else {
    out << "membership: not applicable (" << r.membership_note << ")\n";
  }
  out << "\n";
  if (r.gap) {
    out << gap_text(*r.gap);
  } else {
    out << "invariance gap: not applicable (" << r.gap_note << ")\n";
  }
  if (r.negativity) {
    out << "\nsigned joint: least negative mass " << fixed6(*r.negativity) << "\n";
  }
  return out.str();
}

}  // namespace bellkit
