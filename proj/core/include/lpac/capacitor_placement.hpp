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

// Capacitor placement: fewest switched capacitors that keep cold-start LPAC
// voltages inside [v_min, v_max] without exceeding generator reactive caps.

#ifndef LPAC_CAPACITOR_PLACEMENT_HPP_
#define LPAC_CAPACITOR_PLACEMENT_HPP_

#include <string>
#include <vector>

#include "lpac/lp_backend.hpp"
#include "lpac/lpac_models.hpp"
#include "lpac/network.hpp"

namespace lpac {

// Sets every transformer tap to 1.0 (phase shifts kept) and removes
// generator records with zero active output; buses left without a
// generator become load buses.
PowerNetwork MakeIeee57c(const PowerNetwork& net);

struct CppInstance {
  PowerNetwork net;
  std::vector<double> q_max;  // per generator, MVar; empty uses the case
  double qc_max_mvar = 30.0;  // capacitor cap, also the big-M
  double v_min = 0.9;
  double v_max = 1.05;
  int cosine_segments = PwlCosine::kDefaultSegments;
};

struct CppModel {
  LpacModel model;
  std::vector<int> qc;  // per bus, -1 where no capacitor may be placed
  std::vector<int> c;   // per bus, -1 likewise
};

// Throws std::invalid_argument unless 0 < qc_max and v_min < v_max.
CppModel BuildCpp(const CppInstance& inst);

struct CppSolution {
  double v_min = 0.0;  // floor the placement was computed for
  SolveStatus status = SolveStatus::kIterationLimit;
  std::string diagnostic;
  std::vector<int> placed;     // bus ids with a capacitor
  std::vector<double> qc;      // per bus, MVar
  int count = 0;
  double seconds = 0.0;
  long nodes = 0;
  // AC verification.
  bool verified = false;
  bool ac_converged = false;
  std::string ac_diagnostic;
  double min_vm = 0.0;
  double max_vm = 0.0;
  double v_low_violation = 0.0;   // min(0, min |V| - v_min), p.u.
  double v_high_violation = 0.0;  // max(0, max |V| - v_max), p.u.
  double q_violation = 0.0;       // max(0, max q^g - cap), MVar

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

CppSolution SolveCpp(const CppInstance& inst,
                     const SolverOptions& options = {});

// Installs the capacitors as reactive injections and runs the AC solver.
void VerifyCpp(const CppInstance& inst, CppSolution& sol);

}  // namespace lpac

#endif  // LPAC_CAPACITOR_PLACEMENT_HPP_
