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

#ifndef BELLKIT_SIMPLEX_H_
#define BELLKIT_SIMPLEX_H_

#include <cstddef>
#include <utility>
#include <vector>

namespace bellkit::lp {

/// A linear program in equality standard form:
///
///   minimize c^T x  subject to  A x = b,  x >= 0.
///
/// Inequalities are expressed by the caller with explicit slack variables.
class LinearProgram {
 public:
  using Term = std::pair<std::size_t, double>;

  /// Returns the index of the new variable.
  std::size_t add_variable(double cost = 0.0);
  std::size_t add_variables(std::size_t count, double cost = 0.0);
  void set_cost(std::size_t variable, double cost) { costs_.at(variable) = cost; }

  /// sum_k coefficient_k * x_{variable_k} = rhs. Repeated variables add up.
  void add_constraint(const std::vector<Term>& terms, double rhs);

  std::size_t variables() const { return costs_.size(); }
  std::size_t constraints() const { return rhs_.size(); }
  const std::vector<double>& costs() const { return costs_; }
  const std::vector<std::vector<Term>>& rows() const { return rows_; }
  const std::vector<double>& rhs() const { return rhs_; }

 private:
  std::vector<double> costs_;
  std::vector<std::vector<Term>> rows_;
  std::vector<double> rhs_;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(Status status);

struct Options {
  // Phase one declares the program infeasible when the total artificial mass
  // left exceeds this.
  double feasibility_tol = 1e-9;
  // Smallest magnitude accepted as a pivot element.
  double pivot_tol = 1e-9;
  // After phase one, a row still holding an artificial is redundant when all
  // its structural entries are below this.
  double redundancy_tol = 1e-9;
  // A reduced cost must be below -cost_tol for its column to enter.
  double cost_tol = 1e-11;
  // Consecutive degenerate pivots under Dantzig's rule before switching to
  // Bland's rule until the next nondegenerate pivot.
  std::size_t degenerate_limit = 20;
  // 0 selects a limit from the problem size.
  std::size_t max_iterations = 0;
};

struct Solution {
  Status status = Status::iteration_limit;
  std::vector<double> x;
  double objective = 0.0;
  // Optimal duals y with A^T y <= c (status optimal).
  std::vector<double> duals;
  // Farkas ray y with A^T y <= 0 and b^T y > 0 (status infeasible).
  std::vector<double> farkas;
  double phase_one_objective = 0.0;
  std::size_t iterations = 0;
};

/// Dense two-phase tableau simplex. Dantzig pricing with a Bland fallback
/// on degenerate stalls, so every run terminates. Deterministic.
Solution solve(const LinearProgram& program, const Options& options = {});

}  // namespace bellkit::lp

#endif  // BELLKIT_SIMPLEX_H_
