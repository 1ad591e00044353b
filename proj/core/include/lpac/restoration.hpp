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

// Load restoration after line outages: maximize served load with a warm
// LPAC (or DC) model, then test whether the dispatch is AC-solvable.

#ifndef LPAC_RESTORATION_HPP_
#define LPAC_RESTORATION_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lpac/lp_backend.hpp"
#include "lpac/lpac_models.hpp"
#include "lpac/network.hpp"

namespace lpac {

enum class RestorationVariant { kLdc, kLpac, kLpacR, kLpacRV };

const char* ToString(RestorationVariant variant);
// Accepts "ldc", "lpac", "lpac-r", "lpac-r-v" (case-insensitive).
RestorationVariant ParseRestorationVariant(const std::string& text);

struct RestorationInstance {
  // Damaged network, reduced to the slack bus's island.
  PowerNetwork net;
  std::vector<std::size_t> removed_lines;  // record indices in the original
  std::vector<int> dropped_buses;          // ids of buses cut off the slack
  double original_load_p = 0.0;            // p.u., undamaged network
  RestorationVariant variant = RestorationVariant::kLpac;
  // Per generator of net; empty uses the case-file limits.
  std::vector<double> p_max;
  std::vector<double> q_max;
  // The slack's reactive output is free in the AC check, so by default the
  // LPAC-R cap is not applied to it.
  bool cap_slack_q = false;
  double v_min = 0.9;
  double v_max = 1.1;
  double cos_weight = 1e-3;
  // Warm-start targets per bus of net; empty uses the generator setpoints
  // at voltage-controlled buses and 1.0 elsewhere.
  std::vector<double> warm_target;
  int cosine_segments = PwlCosine::kDefaultSegments;
  int ac_max_iterations = 10;
  double ac_tolerance = 1e-8;
};

// Removes the given line records and every bus not connected to the slack.
// Throws NetworkError when an index is out of range.
RestorationInstance MakeRestorationInstance(
    const PowerNetwork& net, const std::vector<std::size_t>& removed_lines,
    RestorationVariant variant = RestorationVariant::kLpac);

// Uniform sample of k distinct line records, resampled (up to 100 times)
// while the slack's island carries no active load.
RestorationInstance SampleContingency(const PowerNetwork& net, int k,
                                      std::uint64_t seed);

// Seed of one sample inside a study; stable across platforms.
std::uint64_t SampleSeed(std::uint64_t seed, int k, int index);

struct RestorationModel {
  LpacModel model;
  std::vector<int> load;   // served fraction per bus, -1 without load
  std::vector<int> p_gen;  // per bus, -1 without generators
  std::vector<int> q_gen;  // per bus, -1 off voltage-controlled generators
};

RestorationModel BuildRestoration(const RestorationInstance& inst);

struct DispatchResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::string diagnostic;
  double objective = 0.0;
  std::vector<double> served;  // per bus of inst.net, 0 without load
  std::vector<double> p_gen;   // per bus, p.u.
  std::vector<double> q_gen;   // per bus, p.u.
  std::vector<double> theta;
  std::vector<double> vm;
  double shed_percent = 100.0;  // of the undamaged network's active load
  bool ac_checked = false;
  bool ac_feasible = false;
  int ac_iterations = 0;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

DispatchResult SolveRestoration(const RestorationInstance& inst,
                                const SolverOptions& options = {});

// Fixes loads and generator outputs from the dispatch and runs Newton from
// the LP point. Updates ac_checked, ac_feasible and ac_iterations.
bool CheckAcFeasibility(const RestorationInstance& inst,
                        DispatchResult& dispatch);

struct StudyOptions {
  int k_first = 3;
  int k_last = 20;
  int samples = 100;
  std::uint64_t seed = 7;
  std::vector<RestorationVariant> variants = {
      RestorationVariant::kLdc, RestorationVariant::kLpac,
      RestorationVariant::kLpacR, RestorationVariant::kLpacRV};
  unsigned threads = 0;  // 0 uses the hardware concurrency
  SolverOptions solver;
  // Applied to every sampled instance before it is solved.
  std::function<void(RestorationInstance&)> configure;
};

struct StudyCell {
  int k = 0;
  RestorationVariant variant = RestorationVariant::kLpac;
  int samples = 0;
  int converged = 0;
  int lp_failures = 0;
  double mean_shed = 0.0;
};

struct StudyTable {
  std::vector<StudyCell> cells;  // class-major, variants in option order
  std::vector<int> classes;
  std::vector<RestorationVariant> variants;

  const StudyCell* find(int k, RestorationVariant variant) const;
};

StudyTable RunStudy(const PowerNetwork& net, const StudyOptions& options);

}  // namespace lpac

#endif  // LPAC_RESTORATION_HPP_
