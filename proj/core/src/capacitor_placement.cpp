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

#include "lpac/capacitor_placement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpac/ac_solver.hpp"

namespace lpac {

PowerNetwork MakeIeee57c(const PowerNetwork& net) {
  std::vector<LineRecord> lines = net.lines();
  for (LineRecord& l : lines) {
    if (l.transformer) l.transformer->tap = 1.0;
  }
  std::vector<Generator> gens;
  for (const Generator& g : net.generators()) {
    if (g.p_output != 0.0) gens.push_back(g);
  }
  std::vector<Bus> buses = net.buses();
  for (Bus& b : buses) {
    if (b.kind != BusKind::kGenerator) continue;
    const bool any = std::any_of(gens.begin(), gens.end(), [&](const auto& g) {
      return g.bus == b.id;
    });
    if (!any) b.kind = BusKind::kLoad;
  }
  return PowerNetwork(net.base_mva(), std::move(buses), std::move(lines),
                      std::move(gens));
}

namespace {

double BusQCap(const CppInstance& inst, std::size_t i) {
  const PowerNetwork& net = inst.net;
  double cap = 0.0;
  for (std::size_t g : net.generators_at(i)) {
    cap += inst.q_max.empty() ? net.generators()[g].q_max
                              : inst.q_max[g] / net.base_mva();
  }
  return cap;
}

}  // namespace

CppModel BuildCpp(const CppInstance& inst) {
  if (!(inst.qc_max_mvar > 0.0)) {
    throw std::invalid_argument("capacitor cap must be positive");
  }
  if (!(inst.v_min < inst.v_max)) {
    throw std::invalid_argument("v_min must be below v_max");
  }
  const PowerNetwork& net = inst.net;
  if (!inst.q_max.empty() && inst.q_max.size() != net.generators().size()) {
    throw std::invalid_argument("q_max needs one entry per generator");
  }
  const std::size_t n = net.num_buses();
  const double qc_max = inst.qc_max_mvar / net.base_mva();
  ModelOptions mo;
  mo.cosine_segments = inst.cosine_segments;
  CppModel r;
  r.model = BuildModelCore(net, ModelKind::kCold,
                           ColdVoltageEstimate(net, ColdVoltage::kSetpoint), mo);
  LpacModel& m = r.model;
  m.lp.set_name("capacitor_placement");
  r.qc.assign(n, -1);
  r.c.assign(n, -1);
  LinearExpr objective;
  for (std::size_t i = 0; i < n; ++i) {
    if (net.is_voltage_controlled(i)) continue;
    const std::string id = std::to_string(net.buses()[i].id);
    r.qc[i] = m.lp.AddVariable("qc_" + id, 0.0, qc_max);
    r.c[i] = m.lp.AddVariable("c_" + id, 0.0, 1.0, /*binary=*/true);
    objective.Add(r.c[i], 1.0);
    LinearExpr link;
    link.Add(r.qc[i], 1.0).Add(r.c[i], -qc_max);
    m.lp.AddLessEqual("link_" + id, link, 0.0);
  }
  m.lp.SetObjective(Sense::kMinimize, objective);

  for (std::size_t i = 0; i < n; ++i) {
    const Bus& b = net.buses()[i];
    const std::string id = std::to_string(b.id);
    const Complex s = net.scheduled_injection(i);
    if (!net.is_slack(i)) m.lp.AddEquality("kcl_p_" + id, m.p_bus[i], s.real());
    if (net.is_voltage_controlled(i)) {
      if (net.generators_at(i).empty()) continue;
      // generated q = injection + reactive load
      m.lp.AddLessEqual("qcap_" + id, m.q_bus[i],
                        BusQCap(inst, i) - b.load.imag());
    } else {
      LinearExpr q = m.q_bus[i];
      q.Add(r.qc[i], -1.0);
      m.lp.AddEquality("kcl_q_" + id, q, s.imag());
    }
  }
  ConstraintOptions co;
  co.v_min = inst.v_min;
  co.v_max = inst.v_max;
  AddConstraints(m, co);
  return r;
}

CppSolution SolveCpp(const CppInstance& inst, const SolverOptions& options) {
  const CppModel r = BuildCpp(inst);
  const SolveResult res = SolveMip(r.model.lp, options);
  CppSolution sol;
  sol.v_min = inst.v_min;
  sol.status = res.status;
  sol.diagnostic = res.diagnostic;
  sol.seconds = res.seconds;
  sol.nodes = res.nodes;
  if (res.x.empty()) return sol;
  const PowerNetwork& net = inst.net;
  sol.qc.assign(net.num_buses(), 0.0);
  for (std::size_t i = 0; i < net.num_buses(); ++i) {
    if (r.c[i] < 0) continue;
    if (res.x[r.c[i]] > 0.5) {
      sol.placed.push_back(net.buses()[i].id);
      sol.qc[i] = res.x[r.qc[i]] * net.base_mva();
    }
  }
  sol.count = static_cast<int>(sol.placed.size());
  return sol;
}

void VerifyCpp(const CppInstance& inst, CppSolution& sol) {
  const PowerNetwork& net = inst.net;
  const std::size_t n = net.num_buses();
  std::vector<Bus> buses = net.buses();
  if (!sol.qc.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      buses[i].load -= Complex(0.0, sol.qc[i] / net.base_mva());
    }
  }
  const PowerNetwork fixed(net.base_mva(), std::move(buses), net.lines(),
                           net.generators());
  const AcSolution ac = SolveAc(fixed);
  sol.verified = true;
  sol.ac_converged = ac.converged;
  sol.ac_diagnostic = ac.diagnostic;
  if (!ac.converged) return;
  sol.min_vm = *std::min_element(ac.vm.begin(), ac.vm.end());
  sol.max_vm = *std::max_element(ac.vm.begin(), ac.vm.end());
  sol.v_low_violation = std::min(0.0, sol.min_vm - inst.v_min);
  sol.v_high_violation = std::max(0.0, sol.max_vm - inst.v_max);
  sol.q_violation = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!fixed.is_voltage_controlled(i) || fixed.generators_at(i).empty()) {
      continue;
    }
    const double qg = ac.injection[i].imag() + fixed.buses()[i].load.imag();
    sol.q_violation = std::max(sol.q_violation,
                               (qg - BusQCap(inst, i)) * net.base_mva());
  }
}

}  // namespace lpac
