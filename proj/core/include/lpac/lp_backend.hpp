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

// Deterministic LP and binary-MIP solving. The bundled backend is a dense
// bounded-variable simplex on a full tableau (primal with a composite phase
// 1, dual simplex for re-optimization, Harris ratio test, Bland fallback on
// stalling) plus best-first branch-and-bound.

#ifndef LPAC_LP_BACKEND_HPP_
#define LPAC_LP_BACKEND_HPP_

#include <memory>
#include <string>
#include <vector>

#include "lpac/linear_program.hpp"

namespace lpac {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* ToString(SolveStatus status);

struct SolverOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  double integrality_tol = 1e-6;
  // Lazy rows are added when violated by more than this.
  double lazy_tol = 1e-9;
  int max_iterations = 0;  // 0 picks a size-based default
  long node_limit = 1'000'000;
  double time_limit_seconds = 0.0;  // 0 means none
  bool use_lazy_rows = true;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> x;  // empty unless a feasible point is known
  long iterations = 0;
  long nodes = 0;
  int lazy_rows_added = 0;
  double best_bound = 0.0;  // MIP: proven bound in the objective's sense
  double seconds = 0.0;
  std::string diagnostic;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

// Adapter seam: model builders only talk to this interface.
class LpBackend {
 public:
  virtual ~LpBackend() = default;
  virtual std::string name() const = 0;
  // Dispatches to branch-and-bound when the program has binaries.
  virtual SolveResult Solve(const LinearProgram& lp,
                            const SolverOptions& options) = 0;
};

class DenseSimplexBackend final : public LpBackend {
 public:
  std::string name() const override { return "dense-simplex"; }
  SolveResult Solve(const LinearProgram& lp,
                    const SolverOptions& options) override;
};

std::unique_ptr<LpBackend> MakeDefaultBackend();

// Continuous relaxation (binary markers ignored).
SolveResult SolveLp(const LinearProgram& lp, const SolverOptions& options = {});
SolveResult SolveMip(const LinearProgram& lp,
                     const SolverOptions& options = {});

}  // namespace lpac

#endif  // LPAC_LP_BACKEND_HPP_
