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

#include "lpac/lp_backend.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <cmath>
#include <queue>
#include <utility>

namespace lpac {

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kPivotTol = 1e-9;
constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr int kStallLimit = 60;
constexpr double kDriftTol = 1e-9;

// Basic variables are expressed in the nonbasic ones:
//   x[head[r]] = sum_c T(r, c) * x[col[c]].
// Variables 0..n-1 are structural; n + k is the logical of the k-th active
// row (its value is the row activity). The objective row d is kept in the
// same form, z = sum_c d[c] * x[col[c]], minimization.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::vector<double> cost, bool withhold,
          long max_iterations)
      : lp_(&lp),
        n_(lp.num_variables()),
        cost_(std::move(cost)),
        max_iterations_(max_iterations) {
    lb_.reserve(n_ + lp.num_rows());
    for (const Variable& v : lp.variables()) {
      lb_.push_back(v.lower);
      ub_.push_back(v.upper);
      x_.push_back(InitialValue(v.lower, v.upper));
    }
    col_.resize(n_);
    where_.resize(n_);
    for (int j = 0; j < n_; ++j) {
      col_[j] = j;
      where_[j] = -(j + 1);
    }
    d_.assign(cost_.begin(), cost_.begin() + n_);
    withheld_.assign(lp.num_rows(), false);
    for (int i = 0; i < lp.num_rows(); ++i) {
      if (withhold && lp.rows()[i].lazy) {
        withheld_[i] = true;
      } else {
        AddRow(i);
      }
    }
  }

  int rows() const { return static_cast<int>(head_.size()); }
  void ResetIterations(long cap) {
    iterations_ = 0;
    max_iterations_ = cap;
    added_lazy_ = 0;
  }
  long iterations() const { return iterations_; }
  int added_lazy() const { return added_lazy_; }

  std::vector<double> Structurals() const {
    std::vector<double> x(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      x[j] = std::clamp(x[j], lb_[j], ub_[j]);
    }
    return x;
  }

  double Objective() const {
    double z = 0.0;
    for (int j = 0; j < n_; ++j) z += cost_[j] * x_[j];
    return z;
  }

  bool HasWithheld() const {
    return std::find(withheld_.begin(), withheld_.end(), true) !=
           withheld_.end();
  }

  // Appends lp row i to the tableau with its logical basic.
  void AddRow(int i) {
    const Row& row = lp_->rows()[i];
    const int var = static_cast<int>(lb_.size());
    lb_.push_back(row.lower);
    ub_.push_back(row.upper);
    cost_.push_back(0.0);
    const std::size_t base = t_.size();
    t_.resize(base + n_, 0.0);
    double value = 0.0;
    for (const Term& term : row.terms) {
      const int w = where_[term.var];
      if (w < 0) {
        t_[base + (-w - 1)] += term.coef;
      } else {
        const double* src = &t_[static_cast<std::size_t>(w) * n_];
        double* dst = &t_[base];
        for (int c = 0; c < n_; ++c) dst[c] += term.coef * src[c];
      }
      value += term.coef * x_[term.var];
    }
    x_.push_back(value);
    where_.push_back(rows());
    head_.push_back(var);
    row_of_logical_.push_back(i);
    withheld_[i] = false;
  }

  // Activates withheld rows violated at the current point.
  int Separate(double tol) {
    const std::vector<double> x = Structurals();
    int added = 0;
    for (int i = 0; i < lp_->num_rows(); ++i) {
      if (!withheld_[i]) continue;
      const Row& row = lp_->rows()[i];
      double a = 0.0;
      for (const Term& t : row.terms) a += t.coef * x[t.var];
      if (a > row.upper + tol || a < row.lower - tol) {
        AddRow(i);
        ++added;
      }
    }
    added_lazy_ += added;
    return added;
  }

  void ActivateAll() {
    for (int i = 0; i < lp_->num_rows(); ++i) {
      if (withheld_[i]) AddRow(i);
    }
  }

  // B&B bound change on structural j.
  void SetBounds(int j, double lo, double hi) {
    lb_[j] = lo;
    ub_[j] = hi;
    const int w = where_[j];
    if (w >= 0) return;
    const int c = -w - 1;
    const double target = std::clamp(x_[j], lo, hi);
    const double delta = target - x_[j];
    if (delta == 0.0) return;
    x_[j] = target;
    for (int r = 0; r < rows(); ++r) x_[head_[r]] += T(r, c) * delta;
  }

  SolveStatus Primal() {
    bland_ = false;
    stall_ = 0;
    last_measure_ = kInfinity;
    bool feasible = false;
    while (!feasible) {
      const int status = PrimalIterate(/*phase_one=*/true, feasible);
      if (status >= 0) return static_cast<SolveStatus>(status);
    }
    bool dummy = false;
    for (;;) {
      const int status = PrimalIterate(/*phase_one=*/false, dummy);
      if (status >= 0) return static_cast<SolveStatus>(status);
    }
  }

  SolveStatus Dual() {
    if (MaxDualInfeasibility() > 1e3 * kDualTol) return Primal();
    bland_ = false;
    stall_ = 0;
    double best = Objective();
    for (;;) {
      if (iterations_ >= max_iterations_) return SolveStatus::kIterationLimit;
      // Leaving row.
      int r = -1;
      double worst = kPrimalTol;
      for (int i = 0; i < rows(); ++i) {
        const int b = head_[i];
        const double inf = std::max(lb_[b] - x_[b], x_[b] - ub_[b]);
        if (inf <= kPrimalTol) continue;
        if (bland_) {
          if (r < 0 || b < head_[r]) r = i;
        } else if (inf > worst) {
          worst = inf;
          r = i;
        }
      }
      if (r < 0) return Primal();  // primal feasible; polish
      const int leaving = head_[r];
      const bool below = x_[leaving] < lb_[leaving];
      const double target = below ? lb_[leaving] : ub_[leaving];
      const double sign = below ? 1.0 : -1.0;
      // Entering column by the dual ratio test (Harris two-pass).
      double theta_max = kInfinity;
      for (int c = 0; c < n_; ++c) {
        double ratio;
        if (!DualCandidate(r, c, sign, ratio)) continue;
        theta_max = std::min(theta_max,
                             (ratio * std::abs(T(r, c)) + kDualTol) /
                                 std::abs(T(r, c)));
      }
      if (theta_max == kInfinity) return SolveStatus::kInfeasible;
      int enter = -1;
      double best_alpha = 0.0;
      for (int c = 0; c < n_; ++c) {
        double ratio;
        if (!DualCandidate(r, c, sign, ratio) || ratio > theta_max) continue;
        const double alpha = std::abs(T(r, c));
        if (bland_) {
          if (enter < 0 || col_[c] < col_[enter]) enter = c;
        } else if (alpha > best_alpha) {
          best_alpha = alpha;
          enter = c;
        }
      }
      const double delta = (target - x_[leaving]) / T(r, enter);
      const int var = col_[enter];
      x_[var] += delta;
      for (int i = 0; i < rows(); ++i) x_[head_[i]] += T(i, enter) * delta;
      x_[leaving] = target;
      Pivot(r, enter);
      ++iterations_;
      Housekeeping();
      const double z = Objective();
      if (z > best + 1e-12 * (1.0 + std::abs(best))) {
        best = z;
        stall_ = 0;
        bland_ = false;
      } else if (++stall_ > kStallLimit) {
        bland_ = true;
      }
    }
  }

  // Rebuilds the tableau from the original rows for the current basis.
  void Reinvert() {
    std::vector<char> in_basis(lb_.size(), 0);
    for (int b : head_) in_basis[b] = 1;
    const std::vector<int> logical_rows = row_of_logical_;
    t_.assign(static_cast<std::size_t>(logical_rows.size()) * n_, 0.0);
    for (std::size_t k = 0; k < logical_rows.size(); ++k) {
      for (const Term& term : lp_->rows()[logical_rows[k]].terms) {
        t_[k * n_ + term.var] += term.coef;
      }
    }
    for (int j = 0; j < n_; ++j) {
      col_[j] = j;
      where_[j] = -(j + 1);
    }
    for (std::size_t k = 0; k < logical_rows.size(); ++k) {
      head_[k] = n_ + static_cast<int>(k);
      where_[n_ + k] = static_cast<int>(k);
    }
    d_.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (!in_basis[j]) continue;
      const int c = -where_[j] - 1;
      int best = -1;
      double best_abs = kPivotTol;
      for (int r = 0; r < rows(); ++r) {
        if (in_basis[head_[r]]) continue;
        if (std::abs(T(r, c)) > best_abs) {
          best_abs = std::abs(T(r, c));
          best = r;
        }
      }
      if (best >= 0) Pivot(best, c);
    }
    // Nonbasic values: keep, but snap bounded ones that drifted.
    for (int c = 0; c < n_; ++c) {
      const int v = col_[c];
      x_[v] = std::clamp(x_[v], lb_[v], ub_[v]);
    }
    RecomputeBasics();
    RecomputeCosts();
  }

 private:
  static double InitialValue(double lo, double hi) {
    if (lo <= 0.0 && hi >= 0.0) return 0.0;
    return std::isfinite(lo) ? lo : hi;
  }

  double T(int r, int c) const {
    return t_[static_cast<std::size_t>(r) * n_ + c];
  }

  void RecomputeBasics() {
    for (int r = 0; r < rows(); ++r) {
      const double* row = &t_[static_cast<std::size_t>(r) * n_];
      double v = 0.0;
      for (int c = 0; c < n_; ++c) v += row[c] * x_[col_[c]];
      x_[head_[r]] = v;
    }
  }

  void RecomputeCosts() {
    for (int c = 0; c < n_; ++c) d_[c] = cost_[col_[c]];
    for (int r = 0; r < rows(); ++r) {
      const double cb = cost_[head_[r]];
      if (cb == 0.0) continue;
      const double* row = &t_[static_cast<std::size_t>(r) * n_];
      for (int c = 0; c < n_; ++c) d_[c] += cb * row[c];
    }
  }

  // Every 100 pivots: refresh basic values and rebuild the tableau when the
  // logicals no longer match their rows evaluated at the structurals.
  void Housekeeping() {
    if (iterations_ % 100 != 0) return;
    RecomputeBasics();
    double drift = 0.0;
    for (std::size_t k = 0; k < row_of_logical_.size(); ++k) {
      double a = 0.0, scale = 1.0;
      for (const Term& t : lp_->rows()[row_of_logical_[k]].terms) {
        a += t.coef * x_[t.var];
        scale = std::max(scale, std::abs(t.coef * x_[t.var]));
      }
      drift = std::max(drift, std::abs(a - x_[n_ + k]) / scale);
    }
    if (drift > kDriftTol) Reinvert();
  }

  // Exchange basic head_[r] with nonbasic col_[c].
  void Pivot(int r, int c) {
    double* prow = &t_[static_cast<std::size_t>(r) * n_];
    const double inv = 1.0 / prow[c];
    for (int k = 0; k < n_; ++k) prow[k] *= -inv;
    prow[c] = inv;
    auto eliminate = [&](double* row) {
      const double f = row[c];
      if (f == 0.0) return;
      for (int k = 0; k < n_; ++k) row[k] += f * prow[k];
      row[c] = f * inv;
    };
    for (int i = 0; i < rows(); ++i) {
      if (i != r) eliminate(&t_[static_cast<std::size_t>(i) * n_]);
    }
    eliminate(d_.data());
    const int entering = col_[c];
    const int leaving = head_[r];
    head_[r] = entering;
    col_[c] = leaving;
    where_[entering] = r;
    where_[leaving] = -(c + 1);
  }

  bool Fixed(int v) const { return lb_[v] == ub_[v]; }

  double MaxDualInfeasibility() const {
    double worst = 0.0;
    for (int c = 0; c < n_; ++c) {
      const int v = col_[c];
      if (Fixed(v)) continue;
      if (x_[v] < ub_[v]) worst = std::max(worst, -d_[c]);
      if (x_[v] > lb_[v]) worst = std::max(worst, d_[c]);
    }
    return worst;
  }

  // Column c can repair row r (basic must move in direction `sign`).
  bool DualCandidate(int r, int c, double sign, double& ratio) const {
    const int v = col_[c];
    if (Fixed(v)) return false;
    const double a = T(r, c);
    if (std::abs(a) <= kPivotTol) return false;
    const double dir = a * sign > 0 ? 1.0 : -1.0;  // direction of x_v
    if (dir > 0 && !(x_[v] < ub_[v])) return false;
    if (dir < 0 && !(x_[v] > lb_[v])) return false;
    ratio = std::max(0.0, dir * d_[c]) / std::abs(a);
    return true;
  }

  // One primal iteration. Returns a SolveStatus value when finished, -1 to
  // continue. In phase one `feasible` is set once no basic is infeasible.
  int PrimalIterate(bool phase_one, bool& feasible) {
    if (iterations_ >= max_iterations_) {
      return static_cast<int>(SolveStatus::kIterationLimit);
    }
    std::vector<double>& dj = scratch_;
    double measure;
    if (phase_one) {
      std::vector<double> w(rows(), 0.0);
      measure = 0.0;
      for (int r = 0; r < rows(); ++r) {
        const int b = head_[r];
        if (x_[b] < lb_[b] - kPrimalTol) {
          w[r] = -1.0;
          measure += lb_[b] - x_[b];
        } else if (x_[b] > ub_[b] + kPrimalTol) {
          w[r] = 1.0;
          measure += x_[b] - ub_[b];
        }
      }
      if (measure == 0.0) {
        feasible = true;
        bland_ = false;
        stall_ = 0;
        last_measure_ = kInfinity;
        return -1;
      }
      dj.assign(n_, 0.0);
      for (int r = 0; r < rows(); ++r) {
        if (w[r] == 0.0) continue;
        const double* row = &t_[static_cast<std::size_t>(r) * n_];
        for (int c = 0; c < n_; ++c) dj[c] += w[r] * row[c];
      }
    } else {
      dj = d_;
      measure = Objective();
    }
    if (!std::isfinite(last_measure_) ||
        measure < last_measure_ - 1e-12 * (1.0 + std::abs(last_measure_))) {
      last_measure_ = measure;
      stall_ = 0;
      bland_ = false;
    } else if (++stall_ > kStallLimit) {
      bland_ = true;
    }

    // Pricing.
    const double tol = phase_one ? kPrimalTol : kDualTol;
    int enter = -1;
    double dir = 0.0;
    double best = 0.0;
    for (int c = 0; c < n_; ++c) {
      const int v = col_[c];
      if (Fixed(v)) continue;
      double s = 0.0;
      if (dj[c] < -tol && x_[v] < ub_[v]) s = 1.0;
      if (dj[c] > tol && x_[v] > lb_[v]) s = -1.0;
      if (s == 0.0) continue;
      const double score = std::abs(dj[c]);
      if (bland_) {
        if (enter < 0 || v < col_[enter]) enter = c, dir = s;
      } else if (score > best) {
        best = score;
        enter = c;
        dir = s;
      }
    }
    if (enter < 0) {
      if (phase_one) return static_cast<int>(SolveStatus::kInfeasible);
      return static_cast<int>(SolveStatus::kOptimal);
    }

    // Ratio test, Harris two-pass.
    const int ev = col_[enter];
    auto limit = [&](int r, bool relaxed, double& bound) {
      const double alpha = T(r, enter) * dir;
      if (std::abs(alpha) <= kPivotTol) return kInfinity;
      const int b = head_[r];
      const double xb = x_[b];
      const double slack = relaxed ? kPrimalTol : 0.0;
      if (phase_one && xb < lb_[b] - kPrimalTol) {
        if (alpha <= 0) return kInfinity;
        bound = lb_[b];
        return (lb_[b] - xb) / alpha;
      }
      if (phase_one && xb > ub_[b] + kPrimalTol) {
        if (alpha >= 0) return kInfinity;
        bound = ub_[b];
        return (xb - ub_[b]) / -alpha;
      }
      if (alpha > 0) {
        if (!std::isfinite(ub_[b])) return kInfinity;
        bound = ub_[b];
        return std::max(0.0, (ub_[b] + slack - xb) / alpha);
      }
      if (!std::isfinite(lb_[b])) return kInfinity;
      bound = lb_[b];
      return std::max(0.0, (xb - lb_[b] + slack) / -alpha);
    };
    double theta_max = kInfinity;
    double unused;
    for (int r = 0; r < rows(); ++r) {
      theta_max = std::min(theta_max, limit(r, true, unused));
    }
    int leave = -1;
    double step = kInfinity;
    double leave_bound = 0.0;
    if (theta_max < kInfinity) {
      double best_alpha = 0.0;
      for (int r = 0; r < rows(); ++r) {
        double bound = 0.0;
        const double t = limit(r, false, bound);
        if (t > theta_max) continue;
        const double alpha = std::abs(T(r, enter));
        const bool take = bland_ ? (leave < 0 || head_[r] < head_[leave])
                                 : alpha > best_alpha;
        if (take) {
          best_alpha = alpha;
          leave = r;
          step = t;
          leave_bound = bound;
        }
      }
    }
    // Superbasic entering variables may also stop at their own bound.
    double own = kInfinity;
    if (dir > 0 && std::isfinite(ub_[ev])) own = ub_[ev] - x_[ev];
    if (dir < 0 && std::isfinite(lb_[ev])) own = x_[ev] - lb_[ev];
    if (own <= step) {
      if (own == kInfinity) return static_cast<int>(SolveStatus::kUnbounded);
      Move(enter, dir * own);
      x_[ev] = dir > 0 ? ub_[ev] : lb_[ev];
      ++iterations_;
      return -1;
    }
    Move(enter, dir * step);
    x_[head_[leave]] = leave_bound;
    Pivot(leave, enter);
    ++iterations_;
    Housekeeping();
    return -1;
  }

  void Move(int c, double delta) {
    x_[col_[c]] += delta;
    for (int r = 0; r < rows(); ++r) x_[head_[r]] += T(r, c) * delta;
  }

  const LinearProgram* lp_;
  int n_;
  std::vector<double> cost_;
  std::vector<double> lb_, ub_, x_;
  std::vector<double> t_;
  std::vector<double> d_;
  std::vector<int> head_, col_, where_;
  std::vector<int> row_of_logical_;
  std::vector<bool> withheld_;
  std::vector<double> scratch_;
  long iterations_ = 0;
  long max_iterations_;
  int added_lazy_ = 0;
  bool bland_ = false;
  int stall_ = 0;
  double last_measure_ = kInfinity;
};

std::vector<double> MinimizationCosts(const LinearProgram& lp) {
  std::vector<double> cost(lp.num_variables(), 0.0);
  const double s = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
  for (const Term& t : lp.objective().terms) cost[t.var] += s * t.coef;
  return cost;
}

long DefaultIterations(const LinearProgram& lp, const SolverOptions& opt) {
  if (opt.max_iterations > 0) return opt.max_iterations;
  return 50L * (lp.num_rows() + lp.num_variables()) + 10000;
}

// Re-optimizes after separation until no withheld row is violated, and
// rebuilds the tableau once if the final point drifted.
SolveStatus Finish(Tableau& tab, const LinearProgram& lp,
                   const SolverOptions& opt, SolveStatus status) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    while (status == SolveStatus::kOptimal && tab.Separate(opt.lazy_tol) > 0) {
      status = tab.Dual();
    }
    if (status != SolveStatus::kOptimal) return status;
    if (lp.MaxViolation(tab.Structurals()) <= opt.feasibility_tol) {
      return status;
    }
    tab.Reinvert();
    status = tab.Primal();
  }
  return status;
}

double ObjectiveValue(const LinearProgram& lp, const std::vector<double>& x) {
  return lp.objective().Evaluate(x);
}

SolveResult Relaxation(const LinearProgram& lp, const SolverOptions& opt,
                       std::unique_ptr<Tableau>* keep = nullptr) {
  const auto start = Clock::now();
  SolveResult result;
  Tableau tab(lp, MinimizationCosts(lp), opt.use_lazy_rows,
              DefaultIterations(lp, opt));
  SolveStatus status = tab.Primal();
  if (status == SolveStatus::kUnbounded && tab.HasWithheld()) {
    tab.ActivateAll();
    tab.Reinvert();
    status = tab.Primal();
  }
  status = Finish(tab, lp, opt, status);
  result.status = status;
  result.iterations = tab.iterations();
  result.lazy_rows_added = tab.added_lazy();
  if (status == SolveStatus::kOptimal) {
    result.x = tab.Structurals();
    result.objective = ObjectiveValue(lp, result.x);
    result.best_bound = result.objective;
  } else if (status == SolveStatus::kIterationLimit) {
    result.diagnostic = "simplex iteration limit reached";
  }
  result.seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  if (keep) *keep = std::make_unique<Tableau>(std::move(tab));
  return result;
}

struct Node {
  double bound;  // minimization-sense parent bound
  long id;
  std::vector<std::pair<int, double>> fixes;  // binary -> 0/1
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// Objective takes integer values whenever binaries are integral.
bool IntegralObjective(const LinearProgram& lp) {
  if (std::round(lp.objective().constant) != lp.objective().constant) {
    return false;
  }
  for (const Term& t : lp.objective().terms) {
    if (!lp.variables()[t.var].binary || std::round(t.coef) != t.coef) {
      return false;
    }
  }
  return true;
}

}  // namespace

SolveResult SolveLp(const LinearProgram& lp, const SolverOptions& options) {
  return Relaxation(lp, options);
}

SolveResult SolveMip(const LinearProgram& lp, const SolverOptions& options) {
  if (!lp.has_binaries()) return SolveLp(lp, options);
  const auto start = Clock::now();
  const double s = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
  const bool integral = IntegralObjective(lp);
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  std::unique_ptr<Tableau> root;
  SolveResult rr = Relaxation(lp, options, &root);
  SolveResult out;
  out.iterations = rr.iterations;
  out.lazy_rows_added = rr.lazy_rows_added;
  if (!rr.optimal()) {
    out.status = rr.status;
    out.diagnostic = rr.diagnostic;
    out.seconds = elapsed();
    return out;
  }

  double incumbent = kInfinity;  // minimization sense
  std::vector<double> best_x;
  auto prunable = [&](double bound) {
    if (integral) return std::ceil(bound - 1e-6) >= incumbent - 0.5;
    return bound >= incumbent - 1e-9 * (1.0 + std::abs(incumbent));
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push({s * rr.objective, next_id++, {}});
  const long iteration_cap = DefaultIterations(lp, options);
  bool limited = false;
  double frontier = s * rr.objective;

  while (!open.empty()) {
    if (out.nodes >= options.node_limit ||
        (options.time_limit_seconds > 0 &&
         elapsed() > options.time_limit_seconds)) {
      limited = true;
      break;
    }
    Node node = open.top();
    open.pop();
    frontier = node.bound;
    if (prunable(node.bound)) continue;
    ++out.nodes;

    std::vector<double> x;
    double z;
    if (node.fixes.empty()) {
      x = rr.x;
      z = s * rr.objective;
    } else {
      Tableau tab = *root;
      tab.ResetIterations(iteration_cap);
      for (const auto& [j, v] : node.fixes) tab.SetBounds(j, v, v);
      SolveStatus st = Finish(tab, lp, options, tab.Dual());
      out.iterations += tab.iterations();
      out.lazy_rows_added += tab.added_lazy();
      if (st == SolveStatus::kIterationLimit) {
        // Fall back to a fresh solve of this node.
        LinearProgram fixed = lp;
        for (const auto& [j, v] : node.fixes) fixed.SetBounds(j, v, v);
        SolveResult fr = SolveLp(fixed, options);
        out.iterations += fr.iterations;
        st = fr.status;
        if (st == SolveStatus::kOptimal) {
          x = fr.x;
        }
      } else if (st == SolveStatus::kOptimal) {
        x = tab.Structurals();
      }
      if (st != SolveStatus::kOptimal) continue;
      z = s * ObjectiveValue(lp, x);
    }
    if (prunable(z)) continue;

    int branch = -1;
    double best_frac = options.integrality_tol;
    for (int j = 0; j < lp.num_variables(); ++j) {
      if (!lp.variables()[j].binary) continue;
      const double f = x[j] - std::floor(x[j]);
      const double dist = std::min(f, 1.0 - f);
      if (dist > best_frac + 1e-12) {
        best_frac = dist;
        branch = j;
      }
    }
    if (branch < 0) {
      for (int j = 0; j < lp.num_variables(); ++j) {
        if (lp.variables()[j].binary) x[j] = std::round(x[j]);
      }
      incumbent = z;
      best_x = std::move(x);
      continue;
    }
    for (double v : {0.0, 1.0}) {
      Node child{z, next_id++, node.fixes};
      child.fixes.emplace_back(branch, v);
      open.push(std::move(child));
    }
  }

  out.seconds = elapsed();
  if (best_x.empty()) {
    out.status = limited ? SolveStatus::kIterationLimit
                         : SolveStatus::kInfeasible;
    out.diagnostic = limited ? "node limit reached without incumbent" : "";
    return out;
  }
  out.x = std::move(best_x);
  out.objective = ObjectiveValue(lp, out.x);
  if (limited) {
    out.status = SolveStatus::kIterationLimit;
    out.diagnostic = "node limit reached; best incumbent returned";
    out.best_bound = s * std::min(frontier, incumbent);
  } else {
    out.status = SolveStatus::kOptimal;
    out.best_bound = out.objective;
  }
  return out;
}

SolveResult DenseSimplexBackend::Solve(const LinearProgram& lp,
                                       const SolverOptions& options) {
  return lp.has_binaries() ? SolveMip(lp, options) : SolveLp(lp, options);
}

std::unique_ptr<LpBackend> MakeDefaultBackend() {
  return std::make_unique<DenseSimplexBackend>();
}

}  // namespace lpac
