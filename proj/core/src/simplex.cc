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

#include "bellkit/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bellkit::lp {

std::size_t LinearProgram::add_variable(double cost) {
  costs_.push_back(cost);
  return costs_.size() - 1;
}

std::size_t LinearProgram::add_variables(std::size_t count, double cost) {
  const std::size_t first = costs_.size();
  costs_.resize(first + count, cost);
  return first;
}

void LinearProgram::add_constraint(const std::vector<Term>& terms, double rhs) {
  for (const auto& [variable, coefficient] : terms) {
    if (variable >= costs_.size()) {
      throw std::out_of_range("constraint references an unknown variable");
    }
    (void)coefficient;
  }
  rows_.push_back(terms);
  rhs_.push_back(rhs);
}

const char* to_string(Status status) {
  switch (status) {
    case Status::optimal:
      return "optimal";
    case Status::infeasible:
      return "infeasible";
    case Status::unbounded:
      return "unbounded";
    case Status::iteration_limit:
      return "iteration_limit";
  }
  return "unknown";
}

namespace {

// Row-major tableau. Columns: structural variables, then one artificial per
// row, then the right-hand side. An extra last row holds reduced costs, with
// the negated objective value in its rhs cell.
class Tableau {
 public:
  Tableau(const LinearProgram& program, const Options& options)
      : rows_(program.constraints()),
        structural_(program.variables()),
        cols_(structural_ + rows_ + 1),
        options_(options),
        data_((rows_ + 1) * cols_, 0.0),
        basis_(rows_),
        sign_(rows_, 1.0) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (const auto& [j, v] : program.rows()[i]) at(i, j) += v;
      double rhs = program.rhs()[i];
      if (rhs < 0.0) {
        sign_[i] = -1.0;
        for (std::size_t j = 0; j < structural_; ++j) at(i, j) = -at(i, j);
        rhs = -rhs;
      }
      at(i, rhs_col()) = rhs;
      at(i, structural_ + i) = 1.0;
      basis_[i] = structural_ + i;
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t structural() const { return structural_; }
  std::size_t rhs_col() const { return cols_ - 1; }
  double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& cost(std::size_t j) { return at(rows_, j); }
  double cost(std::size_t j) const { return at(rows_, j); }
  std::size_t basic(std::size_t i) const { return basis_[i]; }
  double sign(std::size_t i) const { return sign_[i]; }
  bool is_artificial(std::size_t j) const { return j >= structural_ && j < rhs_col(); }

  // Installs the objective row for `costs` (indexed over all columns except
  // the rhs) expressed in the current basis.
  void set_objective(const std::vector<double>& costs) {
    for (std::size_t j = 0; j < cols_; ++j) {
      cost(j) = j < costs.size() ? costs[j] : 0.0;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = basis_[i] < costs.size() ? costs[basis_[i]] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) cost(j) -= cb * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    double* prow = &data_[r * cols_];
    for (std::size_t j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* row = &data_[i * cols_];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
      if (i < rows_ && row[cols_ - 1] < 0.0 && row[cols_ - 1] > -1e-13) {
        row[cols_ - 1] = 0.0;
      }
    }
    basis_[r] = c;
  }

  // Runs the simplex loop on the current objective row. Artificial columns
  // never enter.
  Status optimize(std::size_t& iterations, std::size_t max_iterations) {
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (iterations >= max_iterations) return Status::iteration_limit;
      // Pricing.
      std::size_t enter = rhs_col();
      double best = -options_.cost_tol;
      for (std::size_t j = 0; j < structural_; ++j) {
        const double d = cost(j);
        if (d < best) {
          enter = j;
          if (bland) break;
          best = d;
        }
      }
      if (enter == rhs_col()) return Status::optimal;

      // Ratio test.
      std::size_t leave = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, enter);
        if (a <= options_.pivot_tol) continue;
        const double ratio = std::max(at(i, rhs_col()), 0.0) / a;
        if (leave == rows_) {
          leave = i;
          best_ratio = ratio;
          continue;
        }
        const double slack = 1e-12 * std::max(1.0, best_ratio);
        if (ratio < best_ratio - slack) {
          leave = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + slack) {
          const bool prefer = bland ? basis_[i] < basis_[leave]
                                    : a > at(leave, enter);
          if (prefer) {
            leave = i;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leave == rows_) return Status::unbounded;

      if (best_ratio <= 1e-14) {
        if (++degenerate_run > options_.degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(leave, enter);
      ++iterations;
    }
  }

  // After phase one: pivot artificials at level zero out of the basis where
  // a structural column allows it. Rows whose structural entries are all
  // round-off are redundant. They are zeroed so that noise never becomes a
  // pivot, and their artificial stays basic at zero.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      std::size_t best_col = rhs_col();
      double best_abs = options_.redundancy_tol;
      for (std::size_t j = 0; j < structural_; ++j) {
        const double a = std::abs(at(i, j));
        if (a > best_abs) {
          best_abs = a;
          best_col = j;
        }
      }
      if (best_col != rhs_col()) {
        pivot(i, best_col);
      } else {
        for (std::size_t j = 0; j < structural_; ++j) at(i, j) = 0.0;
        at(i, rhs_col()) = 0.0;
      }
    }
  }

  std::vector<double> primal() const {
    std::vector<double> x(structural_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) x[basis_[i]] = std::max(at(i, rhs_col()), 0.0);
    }
    return x;
  }

  // y_i = c_B^T B^{-1} e_i in the original row signs; the current column of
  // artificial i is B^{-1} e_i, so y_i = c_{art,i} - reduced_cost(art_i).
  std::vector<double> duals(double artificial_cost) const {
    std::vector<double> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      y[i] = sign_[i] * (artificial_cost - cost(structural_ + i));
    }
    return y;
  }

  double artificial_mass() const {
    double mass = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (is_artificial(basis_[i])) mass += std::max(at(i, rhs_col()), 0.0);
    }
    return mass;
  }

 private:
  std::size_t rows_;
  std::size_t structural_;
  std::size_t cols_;
  Options options_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
  std::vector<double> sign_;
};

}  // namespace

Solution solve(const LinearProgram& program, const Options& options) {
  Tableau tableau(program, options);
  const std::size_t n = program.variables();
  const std::size_t m = program.constraints();
  const std::size_t max_iterations =
      options.max_iterations ? options.max_iterations : 50 * (n + m) + 1000;

  Solution solution;
  // Phase one: minimize the sum of artificials.
  std::vector<double> phase_one(n + m, 0.0);
  std::fill(phase_one.begin() + static_cast<std::ptrdiff_t>(n), phase_one.end(), 1.0);
  tableau.set_objective(phase_one);
  Status status = tableau.optimize(solution.iterations, max_iterations);
  if (status == Status::iteration_limit) {
    solution.status = status;
    return solution;
  }
  solution.phase_one_objective = tableau.artificial_mass();
  if (solution.phase_one_objective > options.feasibility_tol) {
    solution.status = Status::infeasible;
    solution.farkas = tableau.duals(1.0);
    return solution;
  }

  tableau.drive_out_artificials();
  std::vector<double> phase_two(program.costs());
  phase_two.resize(n + m, 0.0);
  tableau.set_objective(phase_two);
  status = tableau.optimize(solution.iterations, max_iterations);
  solution.status = status;
  if (status != Status::optimal) return solution;

  solution.x = tableau.primal();
  solution.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    solution.objective += program.costs()[j] * solution.x[j];
  }
  solution.duals = tableau.duals(0.0);
  return solution;
}

}  // namespace bellkit::lp
