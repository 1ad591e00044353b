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

// Newton-Raphson AC power flow in polar coordinates.

#ifndef LPAC_AC_SOLVER_HPP_
#define LPAC_AC_SOLVER_HPP_

#include <string>
#include <vector>

#include "lpac/network.hpp"

namespace lpac {

enum class AcStart { kFlat, kGiven };

struct AcOptions {
  double tolerance = 1e-8;  // max-norm of the enforced mismatches, p.u.
  int max_iterations = 50;
  AcStart start = AcStart::kFlat;
  // Used with AcStart::kGiven. Magnitudes at PV/slack buses are replaced by
  // their setpoints.
  std::vector<double> vm_start;
  std::vector<double> va_start;
  // Switch PV buses to PQ when generator reactive limits are exceeded.
  bool enforce_q_limits = false;
};

struct AcSolution {
  std::vector<double> vm;
  std::vector<double> va;          // radians, slack at its case angle (0)
  std::vector<Complex> injection;  // S_n = sum of flows + shunt, p.u.
  std::vector<Complex> flows;      // per directed line, LineCoefficients order
  bool converged = false;
  int iterations = 0;
  double max_residual = 0.0;
  std::string diagnostic;
};

AcSolution SolveAc(const PowerNetwork& net, const AcOptions& options = {});

// Flows on every directed line for a voltage assignment.
std::vector<Complex> LineFlows(const PowerNetwork& net,
                               const std::vector<double>& vm,
                               const std::vector<double>& va);

// Scheduled injection minus (line-flow sum + shunt) at each bus. The slack
// has no enforced balance; PV buses enforce only the active part.
struct KclResidual {
  std::vector<Complex> mismatch;
  std::vector<bool> p_enforced;
  std::vector<bool> q_enforced;
  double max_enforced = 0.0;
};

KclResidual ComputeKclResidual(const PowerNetwork& net,
                               const std::vector<double>& vm,
                               const std::vector<double>& va);

}  // namespace lpac

#endif  // LPAC_AC_SOLVER_HPP_
