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

#include "lpac/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace lpac {

LinearExpr& LinearExpr::AddExpr(const LinearExpr& other, double scale) {
  constant += scale * other.constant;
  for (const Term& t : other.terms) terms.push_back({t.var, scale * t.coef});
  return *this;
}

void LinearExpr::Compact() {
  std::unordered_map<int, std::size_t> slot;
  std::vector<Term> merged;
  for (const Term& t : terms) {
    auto [it, fresh] = slot.emplace(t.var, merged.size());
    if (fresh) {
      merged.push_back(t);
    } else {
      merged[it->second].coef += t.coef;
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  terms = std::move(merged);
}

double LinearExpr::Evaluate(const std::vector<double>& x) const {
  double v = constant;
  for (const Term& t : terms) v += t.coef * x[t.var];
  return v;
}

int LinearProgram::AddVariable(std::string name, double lower, double upper,
                               bool binary) {
  if (binary) {
    lower = std::max(lower, 0.0);
    upper = std::min(upper, 1.0);
  }
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw std::invalid_argument("inconsistent bounds on variable " + name);
  }
  variables_.push_back({std::move(name), lower, upper, binary});
  return static_cast<int>(variables_.size()) - 1;
}

void LinearProgram::CheckTerms(const std::vector<Term>& terms) const {
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw std::invalid_argument("term references undeclared variable " +
                                  std::to_string(t.var));
    }
    if (!std::isfinite(t.coef)) {
      throw std::invalid_argument("non-finite coefficient on " +
                                  variables_[t.var].name);
    }
  }
}

int LinearProgram::AddRow(std::string name, const LinearExpr& expr,
                          double lower, double upper, bool lazy) {
  LinearExpr e = expr;
  e.Compact();
  CheckTerms(e.terms);
  lower -= e.constant;
  upper -= e.constant;
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw std::invalid_argument("inconsistent bounds on row " + name);
  }
  rows_.push_back({std::move(name), std::move(e.terms), lower, upper, lazy});
  return static_cast<int>(rows_.size()) - 1;
}

void LinearProgram::SetObjective(Sense sense, const LinearExpr& objective) {
  LinearExpr e = objective;
  e.Compact();
  CheckTerms(e.terms);
  sense_ = sense;
  objective_ = std::move(e);
}

void LinearProgram::SetBounds(int var, double lower, double upper) {
  if (var < 0 || var >= num_variables() || lower > upper) {
    throw std::invalid_argument("bad bound update");
  }
  variables_[var].lower = lower;
  variables_[var].upper = upper;
}

bool LinearProgram::has_binaries() const {
  return std::any_of(variables_.begin(), variables_.end(),
                     [](const Variable& v) { return v.binary; });
}

double LinearProgram::MaxViolation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max({worst, variables_[j].lower - x[j],
                      x[j] - variables_[j].upper});
  }
  for (const Row& r : rows_) {
    double a = 0.0;
    for (const Term& t : r.terms) a += t.coef * x[t.var];
    worst = std::max({worst, r.lower - a, a - r.upper});
  }
  return worst;
}

namespace {

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void WriteTerms(std::ostream& out, const LinearProgram& lp,
                const std::vector<Term>& terms) {
  if (terms.empty()) {
    out << " 0 " << lp.variables().front().name;
    return;
  }
  int on_line = 0;
  for (const Term& t : terms) {
    out << (t.coef < 0 ? " - " : " + ") << Num(std::abs(t.coef)) << " "
        << lp.variables()[t.var].name;
    if (++on_line % 6 == 0) out << "\n   ";
  }
}

}  // namespace

std::string ToLpFormat(const LinearProgram& lp) {
  std::ostringstream out;
  out << "\\ " << lp.name() << "\n";
  if (lp.objective().constant != 0.0) {
    out << "\\ objective constant " << Num(lp.objective().constant) << "\n";
  }
  out << (lp.sense() == Sense::kMaximize ? "Maximize" : "Minimize") << "\n";
  out << " obj:";
  if (lp.num_variables() > 0) WriteTerms(out, lp, lp.objective().terms);
  out << "\nSubject To\n";
  for (const Row& r : lp.rows()) {
    const bool lo = std::isfinite(r.lower);
    const bool hi = std::isfinite(r.upper);
    if (lo && hi && r.lower == r.upper) {
      out << " " << r.name << ":";
      WriteTerms(out, lp, r.terms);
      out << " = " << Num(r.upper) << "\n";
      continue;
    }
    if (lo) {
      out << " " << r.name << (hi ? "_lo:" : ":");
      WriteTerms(out, lp, r.terms);
      out << " >= " << Num(r.lower) << "\n";
    }
    if (hi) {
      out << " " << r.name << (lo ? "_hi:" : ":");
      WriteTerms(out, lp, r.terms);
      out << " <= " << Num(r.upper) << "\n";
    }
  }
  out << "Bounds\n";
  for (const Variable& v : lp.variables()) {
    if (v.binary && v.lower == 0.0 && v.upper == 1.0) continue;
    const bool lo = std::isfinite(v.lower);
    const bool hi = std::isfinite(v.upper);
    if (!lo && !hi) {
      out << " " << v.name << " free\n";
    } else if (lo && hi && v.lower == v.upper) {
      out << " " << v.name << " = " << Num(v.lower) << "\n";
    } else {
      out << " " << (lo ? Num(v.lower) : "-inf") << " <= " << v.name
          << " <= " << (hi ? Num(v.upper) : "+inf") << "\n";
    }
  }
  if (lp.has_binaries()) {
    out << "Binaries\n";
    for (const Variable& v : lp.variables()) {
      if (v.binary) out << " " << v.name << "\n";
    }
  }
  out << "End\n";
  return out.str();
}

}  // namespace lpac
