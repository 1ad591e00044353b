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

// Accuracy of a linear model against the AC solution.

#ifndef LPAC_EVALUATION_HPP_
#define LPAC_EVALUATION_HPP_

#include <string>
#include <vector>

#include "lpac/ac_solver.hpp"
#include "lpac/lpac_models.hpp"
#include "lpac/network.hpp"

namespace lpac {

// How line flows are assembled into the compared vectors.
enum class FlowVectorMode {
  kPairFrom,        // from-side flow, parallel circuits per bus pair summed
  kRecordFrom,      // from-side flow of every line record
  kBothDirections,  // both directed flows of every record
};

const char* ToString(FlowVectorMode mode);

struct QuantityStats {
  bool present = false;
  std::size_t count = 0;
  double corr = 0.0;
  double mean_abs = 0.0;
  double max_abs = 0.0;
  double rel_at_max = 0.0;  // percent of the AC value at the arg-max
};

// Pearson correlation, mean/max absolute error and the relative error at
// the element with the largest absolute error.
QuantityStats ComputeStats(const std::vector<double>& exact,
                           const std::vector<double>& approx);

struct AccuracyReport {
  std::string benchmark;
  std::string model;
  FlowVectorMode flow_mode = FlowVectorMode::kPairFrom;
  QuantityStats active;    // MW
  QuantityStats reactive;  // MVar
  QuantityStats angle;     // rad
  QuantityStats voltage;   // p.u.
};

// Flow vector for one quantity (0 active, 1 reactive) in MW / MVar.
std::vector<double> FlowVector(const PowerNetwork& net,
                               const std::vector<Complex>& flows, int part,
                               FlowVectorMode mode);

// Reactive and voltage statistics are omitted for the DC model.
AccuracyReport Compare(const AcSolution& ac, const LinearSolution& lin,
                       const PowerNetwork& net,
                       FlowVectorMode mode = FlowVectorMode::kPairFrom);

struct CumulativeErrorReport {
  std::string benchmark;
  std::string model;
  double re_drop = 0.0;  // sum over lines |Re(Vn - Vm) error|
  double im_drop = 0.0;  // sum over lines |Im(Vn - Vm) error|
  double p_bus = 0.0;    // sum over buses |p_n error|, MW
  double q_bus = 0.0;    // sum over buses |q_n error|, MVar
};

CumulativeErrorReport CumulativeErrors(const AcSolution& ac,
                                       const LinearSolution& lin,
                                       const PowerNetwork& net);

// 100 |G| / |N|, the slack counted as voltage-controlled.
double PvRatio(const PowerNetwork& net);

}  // namespace lpac

#endif  // LPAC_EVALUATION_HPP_
