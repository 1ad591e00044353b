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

#include "lpac/lpac_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpac {

const char* ToString(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLdc:
      return "ldc";
    case ModelKind::kHot:
      return "hot";
    case ModelKind::kWarm:
      return "warm";
    case ModelKind::kCold:
      return "cold";
  }
  return "unknown";
}

std::string Variant::suffix() const {
  if (drop_g && drop_cos) return "-GC";
  if (drop_g) return "-C";
  if (drop_cos) return "-G";
  return "";
}

std::string LpacModel::label() const {
  return std::string(ToString(kind)) + options.variant.suffix();
}

std::vector<double> ColdVoltageEstimate(const PowerNetwork& net,
                                        ColdVoltage mode) {
  std::vector<double> v(net.num_buses(), 1.0);
  if (mode == ColdVoltage::kSetpoint) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (net.is_voltage_controlled(i)) v[i] = net.buses()[i].voltage_setpoint;
    }
  }
  return v;
}

namespace {

std::string Name(const char* prefix, int id) {
  return std::string(prefix) + "_" + std::to_string(id);
}

}  // namespace

LpacModel BuildModelCore(const PowerNetwork& net, ModelKind kind,
                         const std::vector<double>& v_base,
                         const ModelOptions& options) {
  const std::size_t n = net.num_buses();
  if (kind != ModelKind::kLdc && v_base.size() != n) {
    throw std::invalid_argument("voltage vector has " +
                                std::to_string(v_base.size()) +
                                " entries for " + std::to_string(n) + " buses");
  }
  LpacModel m;
  m.kind = kind;
  m.options = options;
  m.net = std::make_shared<const PowerNetwork>(net);
  m.pwl = PwlCosine(options.cos_lower, options.cos_upper,
                    options.cosine_segments);
  m.lp.set_name(std::string("lpac_") + ToString(kind) +
                options.variant.suffix());
  m.lines = LineCoefficients(net);
  m.v_base = kind == ModelKind::kLdc ? std::vector<double>(n, 1.0) : v_base;
  const Variant& variant = options.variant;
  const bool ldc = kind == ModelKind::kLdc;
  const bool with_phi = kind == ModelKind::kWarm || kind == ModelKind::kCold;

  m.theta.resize(n);
  m.phi.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const Bus& b = net.buses()[i];
    const bool slack = net.is_slack(i);
    m.theta[i] = m.lp.AddVariable(Name("theta", b.id),
                                  slack ? 0.0 : -kInfinity,
                                  slack ? 0.0 : kInfinity);
  }
  if (with_phi) {
    for (std::size_t i = 0; i < n; ++i) {
      const Bus& b = net.buses()[i];
      if (net.is_voltage_controlled(i)) {
        const double v = b.voltage_setpoint - m.v_base[i];
        m.phi[i] = m.lp.AddVariable(Name("phi", b.id), v, v);
      } else {
        m.phi[i] = m.lp.AddVariable(Name("phi", b.id), -m.v_base[i],
                                    kInfinity);
      }
    }
  }

  // One cosine variable per line record, shared by both directions.
  m.cos.assign(net.num_lines(), -1);
  const bool with_cos = !ldc && !variant.drop_cos;
  LinearExpr objective;
  if (with_cos) {
    double nearest = kInfinity;
    for (double a : m.pwl.tangent_points()) {
      nearest = std::min(nearest, std::abs(a));
    }
    for (std::size_t k = 0; k < net.num_lines(); ++k) {
      const LineRecord& l = net.lines()[k];
      const std::string tag =
          std::to_string(k) + "_" + std::to_string(l.from) + "_" +
          std::to_string(l.to);
      const int c = m.lp.AddVariable("cos_" + tag, 0.0, 1.0);
      m.cos[k] = c;
      objective.Add(c, 1.0);
      const int tf = m.theta[net.from_index(k)];
      const int tt = m.theta[net.to_index(k)];
      const double shift = l.Shift();
      // x = theta_f - theta_t - shift
      auto block = [&](const LinearPiece& piece) {
        LinearExpr e;
        e.Add(c, 1.0).Add(tf, -piece.slope).Add(tt, piece.slope);
        e.constant = piece.slope * shift;
        return e;
      };
      m.lp.AddGreaterEqual("chord_" + tag, block(m.pwl.chord()),
                           m.pwl.chord().intercept);
      for (int t = 0; t < m.pwl.segments(); ++t) {
        const bool lazy = options.lazy_tangents &&
                          std::abs(m.pwl.tangent_points()[t]) > nearest + 1e-12;
        m.lp.AddLessEqual("tan" + std::to_string(t) + "_" + tag,
                          block(m.pwl.tangents()[t]),
                          m.pwl.tangents()[t].intercept, lazy);
      }
    }
  }
  m.lp.SetObjective(Sense::kMaximize, objective);

  m.p_flow.resize(m.lines.size());
  if (!ldc) m.q_flow.resize(m.lines.size());
  for (std::size_t e = 0; e < m.lines.size(); ++e) {
    const DirectedLine& d = m.lines[e];
    const int tn = m.theta[d.n];
    const int tm = m.theta[d.m];
    LinearExpr delta;
    delta.Add(tn, 1.0).Add(tm, -1.0);
    delta.constant = -d.angle_offset;
    if (ldc) {
      m.p_flow[e].AddExpr(delta, -d.b);
      continue;
    }
    const double g = variant.drop_g ? 0.0 : d.g;
    const double b = d.b;
    const double self_g = variant.drop_g ? 0.0 : d.self.real();
    const double self_b = d.self.imag();
    const double vn = m.v_base[d.n];
    const double vm = m.v_base[d.m];
    const double vv = vn * vm;
    LinearExpr cosx;
    if (with_cos) {
      cosx.Add(m.cos[d.line], 1.0);
    } else {
      cosx.constant = 1.0;
    }
    LinearExpr& p = m.p_flow[e];
    p.constant = vn * vn * (g + self_g);
    p.AddExpr(cosx, -vv * g).AddExpr(delta, -vv * b);
    LinearExpr& q = m.q_flow[e];
    q.constant = -vn * vn * (b + self_b);
    q.AddExpr(delta, -vv * g).AddExpr(cosx, vv * b);
    if (with_phi) {
      // -V_n b (phi_n - phi_m) - (V_n - V_m) b phi_n
      q.Add(m.phi[d.n], -vn * b - (vn - vm) * b).Add(m.phi[d.m], vn * b);
    }
    p.Compact();
    q.Compact();
  }

  m.p_bus.assign(n, LinearExpr());
  m.q_bus.assign(n, LinearExpr());
  for (std::size_t e = 0; e < m.lines.size(); ++e) {
    m.p_bus[m.lines[e].n].AddExpr(m.p_flow[e]);
    if (!ldc) m.q_bus[m.lines[e].n].AddExpr(m.q_flow[e]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Complex ysh = net.buses()[i].shunt;
    const double v2 = m.v_base[i] * m.v_base[i];
    m.p_bus[i].constant += ysh.real() * v2;
    m.p_bus[i].Compact();
    if (!ldc) {
      m.q_bus[i].constant -= ysh.imag() * v2;
      m.q_bus[i].Compact();
    }
  }
  if (ldc) m.q_bus.clear();
  return m;
}

void AddPowerFlowBalance(LpacModel& m) {
  const PowerNetwork& net = *m.net;
  for (std::size_t i = 0; i < net.num_buses(); ++i) {
    if (net.is_slack(i)) continue;
    const int id = net.buses()[i].id;
    const Complex s = net.scheduled_injection(i);
    m.lp.AddEquality(Name("kcl_p", id), m.p_bus[i], s.real());
    if (m.has_reactive() && !net.is_voltage_controlled(i)) {
      m.lp.AddEquality(Name("kcl_q", id), m.q_bus[i], s.imag());
    }
  }
}

LpacModel BuildLdc(const PowerNetwork& net) {
  LpacModel m = BuildModelCore(net, ModelKind::kLdc, {}, {});
  AddPowerFlowBalance(m);
  return m;
}

LpacModel BuildLpacHot(const PowerNetwork& net,
                       const std::vector<double>& vm_hot,
                       const ModelOptions& options) {
  if (vm_hot.size() != net.num_buses()) {
    throw std::invalid_argument("hot start needs a voltage for every bus");
  }
  LpacModel m = BuildModelCore(net, ModelKind::kHot, vm_hot, options);
  AddPowerFlowBalance(m);
  return m;
}

LpacModel BuildLpacWarm(const PowerNetwork& net,
                        const std::vector<double>& vm_target,
                        const ModelOptions& options) {
  if (vm_target.size() != net.num_buses()) {
    throw std::invalid_argument("warm start needs a target for every bus");
  }
  LpacModel m = BuildModelCore(net, ModelKind::kWarm, vm_target, options);
  AddPowerFlowBalance(m);
  return m;
}

LpacModel BuildLpacCold(const PowerNetwork& net, const ModelOptions& options) {
  LpacModel m = BuildModelCore(
      net, ModelKind::kCold, ColdVoltageEstimate(net, options.cold_voltage),
      options);
  AddPowerFlowBalance(m);
  return m;
}

LpacModel ApplyVariant(const LpacModel& model, Variant variant) {
  if (model.kind != ModelKind::kCold) {
    throw std::invalid_argument("variants are defined on the cold model only");
  }
  ModelOptions options = model.options;
  options.variant = variant;
  return BuildLpacCold(*model.net, options);
}

void AddConstraints(LpacModel& m, const ConstraintOptions& options) {
  const PowerNetwork& net = *m.net;
  const std::size_t n = net.num_buses();
  if (options.v_min || options.v_max) {
    if (!m.has_phi()) {
      throw std::invalid_argument("voltage bounds need a warm or cold model");
    }
    const double lo = options.v_min.value_or(-kInfinity);
    const double hi = options.v_max.value_or(kInfinity);
    for (std::size_t i = 0; i < n; ++i) {
      LinearExpr v(m.v_base[i]);
      v.Add(m.phi[i], 1.0);
      m.lp.AddRow(Name("vbound", net.buses()[i].id), v, lo, hi);
    }
  }
  if (options.generator_q_limits) {
    if (!m.has_reactive()) {
      throw std::invalid_argument("reactive limits need an LPAC model");
    }
    if (!options.q_max.empty() &&
        options.q_max.size() != net.generators().size()) {
      throw std::invalid_argument("q_max needs one entry per generator");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!net.is_voltage_controlled(i) || net.generators_at(i).empty()) {
        continue;
      }
      double cap = 0.0;
      for (std::size_t g : net.generators_at(i)) {
        cap += options.q_max.empty() ? net.generators()[g].q_max
                                     : options.q_max[g];
      }
      // generated q = bus injection + reactive load
      m.lp.AddLessEqual(Name("qcap", net.buses()[i].id), m.q_bus[i],
                        cap - net.buses()[i].load.imag());
    }
  }
  if (options.thermal_segments) {
    const int k = *options.thermal_segments;
    if (k < 4) throw std::invalid_argument("thermal polygon needs k >= 4");
    const double shrink = std::cos(std::numbers::pi / k);
    for (std::size_t e = 0; e < m.lines.size(); ++e) {
      const LineRecord& l = net.lines()[m.lines[e].line];
      if (!l.thermal_limit) continue;
      const double s_max = *l.thermal_limit / net.base_mva();
      for (int j = 0; j < k; ++j) {
        const double a = 2.0 * std::numbers::pi * j / k;
        LinearExpr row;
        row.AddExpr(m.p_flow[e], std::cos(a));
        if (m.has_reactive()) row.AddExpr(m.q_flow[e], std::sin(a));
        m.lp.AddLessEqual("thermal_" + std::to_string(e) + "_" +
                              std::to_string(j),
                          row, s_max * shrink);
      }
    }
  }
}

LinearSolution ExtractSolution(const LpacModel& m, const SolveResult& r) {
  LinearSolution s;
  s.kind = m.kind;
  s.status = r.status;
  s.diagnostic = r.diagnostic;
  s.iterations = r.iterations;
  s.seconds = r.seconds;
  if (r.x.empty()) return s;
  s.objective = r.objective;
  s.x = r.x;
  const std::size_t n = m.net->num_buses();
  s.theta.resize(n);
  s.phi.assign(n, 0.0);
  s.vm.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.theta[i] = r.x[m.theta[i]];
    if (m.phi[i] >= 0) s.phi[i] = r.x[m.phi[i]];
    s.vm[i] = m.v_base[i] + s.phi[i];
  }
  s.cos.resize(m.cos.size());
  for (std::size_t k = 0; k < m.cos.size(); ++k) {
    s.cos[k] = m.cos[k] >= 0 ? r.x[m.cos[k]] : 1.0;
  }
  s.flows.resize(m.p_flow.size());
  for (std::size_t e = 0; e < m.p_flow.size(); ++e) {
    const double q = m.q_flow.empty() ? 0.0 : m.q_flow[e].Evaluate(r.x);
    s.flows[e] = Complex(m.p_flow[e].Evaluate(r.x), q);
  }
  s.injection.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = m.q_bus.empty() ? 0.0 : m.q_bus[i].Evaluate(r.x);
    s.injection[i] = Complex(m.p_bus[i].Evaluate(r.x), q);
  }
  return s;
}

LinearSolution SolveLinear(const LpacModel& model,
                           const SolverOptions& options,
                           LpBackend* backend) {
  std::unique_ptr<LpBackend> owned;
  if (!backend) {
    owned = MakeDefaultBackend();
    backend = owned.get();
  }
  SolveResult r;
  try {
    r = backend->Solve(model.lp, options);
  } catch (const std::exception& e) {
    throw std::runtime_error(model.lp.name() + ": " + e.what());
  }
  LinearSolution s = ExtractSolution(model, r);
  if (!s.optimal() && s.diagnostic.empty()) {
    s.diagnostic = model.lp.name() + ": " + ToString(r.status);
  }
  return s;
}

}  // namespace lpac
