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

// Linear power-flow models: the DC baseline and the LPAC hot, warm and cold
// start models with their ablations and optional operating limits.

#ifndef LPAC_LPAC_MODELS_HPP_
#define LPAC_LPAC_MODELS_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lpac/linear_program.hpp"
#include "lpac/lp_backend.hpp"
#include "lpac/network.hpp"
#include "lpac/pwl_cosine.hpp"

namespace lpac {

enum class ModelKind { kLdc, kHot, kWarm, kCold };

const char* ToString(ModelKind kind);

// Ablations of the cold model: drop_g zeroes line conductances, drop_cos
// replaces the cosine by the constant 1.
struct Variant {
  bool drop_g = false;
  bool drop_cos = false;

  static Variant C() { return {true, false}; }
  static Variant G() { return {false, true}; }
  static Variant GC() { return {true, true}; }
  bool none() const { return !drop_g && !drop_cos; }
  std::string suffix() const;  // "", "-C", "-G", "-GC"
};

// Voltage estimate used by the cold model in its fixed voltage products.
// kSetpoint uses generator setpoints at voltage-controlled buses and 1.0
// elsewhere; kUnit uses 1.0 everywhere with phi fixed to setpoint - 1.
enum class ColdVoltage { kSetpoint, kUnit };

struct ModelOptions {
  int cosine_segments = PwlCosine::kDefaultSegments;
  double cos_lower = -PwlCosine::kDefaultBound;
  double cos_upper = PwlCosine::kDefaultBound;
  ColdVoltage cold_voltage = ColdVoltage::kSetpoint;
  Variant variant;
  // Tangent rows away from zero are handed to the solver as lazy rows.
  bool lazy_tangents = true;
};

struct LpacModel {
  ModelKind kind = ModelKind::kCold;
  ModelOptions options;
  std::shared_ptr<const PowerNetwork> net;
  LinearProgram lp;
  PwlCosine pwl;
  std::vector<DirectedLine> lines;  // LineCoefficients order
  std::vector<double> v_base;       // voltage estimate per bus
  std::vector<int> theta;           // per bus
  std::vector<int> phi;             // per bus, -1 when absent
  std::vector<int> cos;             // per line record, -1 when absent
  std::vector<LinearExpr> p_flow;   // per directed line
  std::vector<LinearExpr> q_flow;   // per directed line (empty for LDC)
  std::vector<LinearExpr> p_bus;    // flow sum plus shunt, per bus
  std::vector<LinearExpr> q_bus;

  bool has_reactive() const { return kind != ModelKind::kLdc; }
  bool has_phi() const {
    return kind == ModelKind::kWarm || kind == ModelKind::kCold;
  }
  std::string label() const;
};

// Variables, flow expressions, cosine blocks and the cosine objective. No
// balance rows; callers add their own (see AddPowerFlowBalance).
LpacModel BuildModelCore(const PowerNetwork& net, ModelKind kind,
                         const std::vector<double>& v_base,
                         const ModelOptions& options);

// Active balance at non-slack buses, reactive balance at buses that do not
// control their voltage, with generation and load as constants.
void AddPowerFlowBalance(LpacModel& model);

LpacModel BuildLdc(const PowerNetwork& net);
LpacModel BuildLpacHot(const PowerNetwork& net,
                       const std::vector<double>& vm_hot,
                       const ModelOptions& options = {});
LpacModel BuildLpacWarm(const PowerNetwork& net,
                        const std::vector<double>& vm_target,
                        const ModelOptions& options = {});
LpacModel BuildLpacCold(const PowerNetwork& net,
                        const ModelOptions& options = {});
// Rebuilds a cold model with the given ablation; throws for other kinds.
LpacModel ApplyVariant(const LpacModel& model, Variant variant);

// Voltage estimate the cold model uses.
std::vector<double> ColdVoltageEstimate(const PowerNetwork& net,
                                        ColdVoltage mode);

struct ConstraintOptions {
  std::optional<double> v_min;
  std::optional<double> v_max;
  // Reactive generation caps at generator buses; per generator record,
  // summed per bus. An empty vector with generator_q_limits set uses the
  // case-file limits.
  bool generator_q_limits = false;
  std::vector<double> q_max;
  // Inscribed regular polygon with this many sides per directed line.
  std::optional<int> thermal_segments;
};

void AddConstraints(LpacModel& model, const ConstraintOptions& options);

struct LinearSolution {
  ModelKind kind = ModelKind::kCold;
  SolveStatus status = SolveStatus::kIterationLimit;
  std::string diagnostic;
  double objective = 0.0;
  std::vector<double> theta;       // per bus
  std::vector<double> phi;         // per bus (0 when absent)
  std::vector<double> vm;          // v_base + phi (1.0 for LDC)
  std::vector<double> cos;         // per line record (1.0 when absent)
  std::vector<Complex> flows;      // per directed line, p + i q
  std::vector<Complex> injection;  // per bus
  std::vector<double> x;           // raw primal values
  long iterations = 0;
  double seconds = 0.0;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

LinearSolution ExtractSolution(const LpacModel& model,
                               const SolveResult& result);
LinearSolution SolveLinear(const LpacModel& model,
                           const SolverOptions& options = {},
                           LpBackend* backend = nullptr);

}  // namespace lpac

#endif  // LPAC_LPAC_MODELS_HPP_
