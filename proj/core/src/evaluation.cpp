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

#include "lpac/evaluation.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace lpac {

const char* ToString(FlowVectorMode mode) {
  switch (mode) {
    case FlowVectorMode::kPairFrom:
      return "pair";
    case FlowVectorMode::kRecordFrom:
      return "record";
    case FlowVectorMode::kBothDirections:
      return "both";
  }
  return "?";
}

QuantityStats ComputeStats(const std::vector<double>& exact,
                           const std::vector<double>& approx) {
  if (exact.size() != approx.size()) {
    throw std::invalid_argument("ComputeStats: size mismatch");
  }
  QuantityStats s;
  s.present = true;
  s.count = exact.size();
  if (exact.empty()) return s;
  const double k = static_cast<double>(exact.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    ma += exact[i];
    mb += approx[i];
  }
  ma /= k;
  mb /= k;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const double da = exact[i] - ma, db = approx[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
    const double err = std::abs(exact[i] - approx[i]);
    s.mean_abs += err;
    if (err > s.max_abs) s.max_abs = err, at = i;
  }
  s.mean_abs /= k;
  if (saa > 0.0 && sbb > 0.0) {
    s.corr = sab / std::sqrt(saa * sbb);
  } else {
    // Constant vectors: perfectly correlated only when they agree.
    s.corr = s.max_abs == 0.0 ? 1.0 : 0.0;
  }
  if (s.max_abs == 0.0) {
    s.rel_at_max = 0.0;
  } else if (exact[at] != 0.0) {
    s.rel_at_max = 100.0 * s.max_abs / std::abs(exact[at]);
  } else {
    s.rel_at_max = kInfinity;
  }
  return s;
}

std::vector<double> FlowVector(const PowerNetwork& net,
                               const std::vector<Complex>& flows, int part,
                               FlowVectorMode mode) {
  const std::size_t lines = net.num_lines();
  if (flows.size() != 2 * lines) {
    throw std::invalid_argument("FlowVector: expected two flows per line");
  }
  const double base = net.base_mva();
  auto pick = [&](Complex s) { return (part == 0 ? s.real() : s.imag()) * base; };
  std::vector<double> out;
  switch (mode) {
    case FlowVectorMode::kBothDirections:
      for (const Complex& s : flows) out.push_back(pick(s));
      break;
    case FlowVectorMode::kRecordFrom:
      for (std::size_t k = 0; k < lines; ++k) out.push_back(pick(flows[2 * k]));
      break;
    case FlowVectorMode::kPairFrom: {
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
      for (std::size_t k = 0; k < lines; ++k) {
        const auto key = std::make_pair(net.from_index(k), net.to_index(k));
        const auto [it, fresh] = slot.emplace(key, out.size());
        if (fresh) out.push_back(0.0);
        out[it->second] += pick(flows[2 * k]);
      }
      break;
    }
  }
  return out;
}

AccuracyReport Compare(const AcSolution& ac, const LinearSolution& lin,
                       const PowerNetwork& net, FlowVectorMode mode) {
  if (ac.flows.size() != lin.flows.size() || ac.va.size() != lin.theta.size()) {
    throw std::invalid_argument("Compare: solutions describe different networks");
  }
  AccuracyReport r;
  r.flow_mode = mode;
  r.active = ComputeStats(FlowVector(net, ac.flows, 0, mode),
                          FlowVector(net, lin.flows, 0, mode));
  r.angle = ComputeStats(ac.va, lin.theta);
  if (lin.kind != ModelKind::kLdc) {
    r.reactive = ComputeStats(FlowVector(net, ac.flows, 1, mode),
                              FlowVector(net, lin.flows, 1, mode));
    r.voltage = ComputeStats(ac.vm, lin.vm);
  }
  return r;
}

CumulativeErrorReport CumulativeErrors(const AcSolution& ac,
                                       const LinearSolution& lin,
                                       const PowerNetwork& net) {
  const std::size_t n = net.num_buses();
  if (ac.vm.size() != n || lin.vm.size() != n) {
    throw std::invalid_argument("CumulativeErrors: size mismatch");
  }
  auto phasor = [](double vm, double va) { return std::polar(vm, va); };
  CumulativeErrorReport r;
  for (std::size_t k = 0; k < net.num_lines(); ++k) {
    const std::size_t a = net.from_index(k), b = net.to_index(k);
    const Complex exact = phasor(ac.vm[a], ac.va[a]) - phasor(ac.vm[b], ac.va[b]);
    const Complex approx =
        phasor(lin.vm[a], lin.theta[a]) - phasor(lin.vm[b], lin.theta[b]);
    r.re_drop += std::abs(exact.real() - approx.real());
    r.im_drop += std::abs(exact.imag() - approx.imag());
  }
  const double base = net.base_mva();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex d = ac.injection[i] - lin.injection[i];
    r.p_bus += std::abs(d.real()) * base;
    r.q_bus += std::abs(d.imag()) * base;
  }
  return r;
}

double PvRatio(const PowerNetwork& net) {
  if (net.num_buses() == 0) return 0.0;
  return 100.0 * static_cast<double>(net.num_generator_buses()) /
         static_cast<double>(net.num_buses());
}

}  // namespace lpac
