// Copyright 2026 The lpac contributors
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

// Declarative linear / mixed-binary programs: bounded variables, ranged
// rows, a linear objective.

#ifndef LPAC_LINEAR_PROGRAM_HPP_
#define LPAC_LINEAR_PROGRAM_HPP_

#include <string>
#include <vector>

#include "lpac/network.hpp"  // kInfinity

namespace lpac {

struct Term {
  int var = 0;
  double coef = 0.0;
};

// constant + sum(coef * x[var])
struct LinearExpr {
  double constant = 0.0;
  std::vector<Term> terms;

  LinearExpr() = default;
  explicit LinearExpr(double c) : constant(c) {}

  LinearExpr& Add(int var, double coef) {
    terms.push_back({var, coef});
    return *this;
  }
  LinearExpr& AddExpr(const LinearExpr& other, double scale = 1.0);
  // Merges repeated variables and drops exact zeros; keeps first-seen order.
  void Compact();
  double Evaluate(const std::vector<double>& x) const;
};

enum class Sense { kMinimize, kMaximize };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool binary = false;
};

// lower <= sum(terms) <= upper. Lazy rows may be withheld by the solver
// until the incumbent point violates them.
struct Row {
  std::string name;
  std::vector<Term> terms;
  double lower = -kInfinity;
  double upper = kInfinity;
  bool lazy = false;
};

class LinearProgram {
 public:
  explicit LinearProgram(std::string name = "lp") : name_(std::move(name)) {}

  int AddVariable(std::string name, double lower, double upper,
                  bool binary = false);
  // The expression constant is moved to the bounds.
  int AddRow(std::string name, const LinearExpr& expr, double lower,
             double upper, bool lazy = false);
  int AddEquality(std::string name, const LinearExpr& expr, double rhs) {
    return AddRow(std::move(name), expr, rhs, rhs);
  }
  int AddLessEqual(std::string name, const LinearExpr& expr, double rhs,
                   bool lazy = false) {
    return AddRow(std::move(name), expr, -kInfinity, rhs, lazy);
  }
  int AddGreaterEqual(std::string name, const LinearExpr& expr, double rhs,
                      bool lazy = false) {
    return AddRow(std::move(name), expr, rhs, kInfinity, lazy);
  }
  void SetObjective(Sense sense, const LinearExpr& objective);
  void SetBounds(int var, double lower, double upper);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Row>& rows() const { return rows_; }
  Sense sense() const { return sense_; }
  const LinearExpr& objective() const { return objective_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  bool has_binaries() const;

  // Largest violation of any row or bound at x (0 when feasible).
  double MaxViolation(const std::vector<double>& x) const;

 private:
  void CheckTerms(const std::vector<Term>& terms) const;

  std::string name_;
  std::vector<Variable> variables_;
  std::vector<Row> rows_;
  Sense sense_ = Sense::kMinimize;
  LinearExpr objective_;
};

// CPLEX LP-format text (objective, rows, bounds, binaries). Ranged rows are
// written as two one-sided rows with suffixes _lo and _hi.
std::string ToLpFormat(const LinearProgram& lp);

}  // namespace lpac

#endif  // LPAC_LINEAR_PROGRAM_HPP_
