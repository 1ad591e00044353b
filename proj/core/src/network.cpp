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

#include "lpac/network.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace lpac {

namespace {

std::string LineName(const LineRecord& l, std::size_t k) {
  return "line " + std::to_string(k) + " (" + std::to_string(l.from) + "-" +
         std::to_string(l.to) + ")";
}

}  // namespace

PowerNetwork::PowerNetwork(double base_mva, std::vector<Bus> buses,
                           std::vector<LineRecord> lines,
                           std::vector<Generator> generators)
    : base_mva_(base_mva),
      buses_(std::move(buses)),
      lines_(std::move(lines)),
      generators_(std::move(generators)) {
  if (!(base_mva_ > 0.0)) throw NetworkError("base MVA must be positive");
  if (buses_.empty()) throw NetworkError("network has no buses");
  Index();
}

void PowerNetwork::Index() {
  index_.clear();
  int slacks = 0;
  for (std::size_t i = 0; i < buses_.size(); ++i) {
    const Bus& b = buses_[i];
    if (!index_.emplace(b.id, i).second) {
      throw NetworkError("duplicate bus id " + std::to_string(b.id));
    }
    if (b.kind == BusKind::kSlack) {
      ++slacks;
      slack_ = i;
    }
    if (b.kind != BusKind::kLoad && !(b.voltage_setpoint > 0.0)) {
      throw NetworkError("bus " + std::to_string(b.id) +
                         " has a non-positive voltage setpoint");
    }
  }
  if (slacks != 1) {
    throw NetworkError("expected exactly one slack bus, found " +
                       std::to_string(slacks));
  }
  line_from_.resize(lines_.size());
  line_to_.resize(lines_.size());
  for (std::size_t k = 0; k < lines_.size(); ++k) {
    const LineRecord& l = lines_[k];
    auto f = index_.find(l.from);
    auto t = index_.find(l.to);
    if (f == index_.end() || t == index_.end()) {
      throw NetworkError(LineName(l, k) + " references an unknown bus");
    }
    if (l.series_impedance == Complex(0.0, 0.0)) {
      throw NetworkError(LineName(l, k) + " has zero series impedance");
    }
    if (l.transformer && !(l.transformer->tap > 0.0)) {
      throw NetworkError(LineName(l, k) + " has a non-positive tap");
    }
    line_from_[k] = f->second;
    line_to_[k] = t->second;
  }
  const std::size_t n = buses_.size();
  gen_p_.assign(n, 0.0);
  gen_q_.assign(n, 0.0);
  gen_pmax_.assign(n, 0.0);
  gen_qmax_.assign(n, 0.0);
  gen_qmin_.assign(n, 0.0);
  gens_at_.assign(n, {});
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    const Generator& gen = generators_[g];
    auto it = index_.find(gen.bus);
    if (it == index_.end()) {
      throw NetworkError("generator " + std::to_string(g) +
                         " references unknown bus " + std::to_string(gen.bus));
    }
    const std::size_t i = it->second;
    gens_at_[i].push_back(g);
    gen_p_[i] += gen.p_output;
    gen_q_[i] += gen.q_output;
    gen_pmax_[i] += gen.p_max;
    gen_qmax_[i] += gen.q_max;
    gen_qmin_[i] += gen.q_min;
  }
}

std::size_t PowerNetwork::index_of(int bus_id) const {
  auto it = index_.find(bus_id);
  if (it == index_.end()) {
    throw NetworkError("unknown bus id " + std::to_string(bus_id));
  }
  return it->second;
}

std::size_t PowerNetwork::num_generator_buses() const {
  std::size_t count = 0;
  for (const Bus& b : buses_) count += b.kind != BusKind::kLoad;
  return count;
}

Complex PowerNetwork::scheduled_injection(std::size_t i) const {
  return Complex(gen_p_[i], gen_q_[i]) - buses_[i].load;
}

double PowerNetwork::total_load_p() const {
  double total = 0.0;
  for (const Bus& b : buses_) total += b.load.real();
  return total;
}

YBus BuildYBus(const PowerNetwork& net) {
  YBus y;
  y.n = net.num_buses();
  y.entries.assign(y.n * y.n, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < net.num_lines(); ++k) {
    const LineRecord& l = net.lines()[k];
    const std::size_t f = net.from_index(k);
    const std::size_t t = net.to_index(k);
    const Complex ys = l.SeriesAdmittance();
    const Complex ytt = ys + l.charge / 2.0;
    const Complex tap = std::polar(l.Tap(), l.Shift());
    y(f, f) += ytt / (l.Tap() * l.Tap());
    y(t, t) += ytt;
    y(f, t) += -ys / std::conj(tap);
    y(t, f) += -ys / tap;
  }
  for (std::size_t i = 0; i < y.n; ++i) y(i, i) += net.buses()[i].shunt;
  return y;
}

std::vector<DirectedLine> LineCoefficients(const PowerNetwork& net) {
  std::vector<DirectedLine> out;
  out.reserve(2 * net.num_lines());
  for (std::size_t k = 0; k < net.num_lines(); ++k) {
    const LineRecord& l = net.lines()[k];
    const Complex ys = l.SeriesAdmittance();
    const double tap = l.Tap();
    const Complex mutual = ys / tap;
    const Complex ytt = ys + l.charge / 2.0;
    DirectedLine fwd;
    fwd.line = k;
    fwd.n = net.from_index(k);
    fwd.m = net.to_index(k);
    fwd.forward = true;
    fwd.g = mutual.real();
    fwd.b = mutual.imag();
    fwd.self = ytt / (tap * tap) - mutual;
    fwd.angle_offset = l.Shift();
    DirectedLine rev = fwd;
    rev.n = fwd.m;
    rev.m = fwd.n;
    rev.forward = false;
    rev.self = ytt - mutual;
    rev.angle_offset = -l.Shift();
    out.push_back(fwd);
    out.push_back(rev);
  }
  return out;
}

Complex DirectedFlow(const DirectedLine& d, const std::vector<double>& vm,
                     const std::vector<double>& va) {
  const double vn = vm[d.n];
  const double vv = vn * vm[d.m];
  const double delta = va[d.n] - va[d.m] - d.angle_offset;
  const double c = std::cos(delta);
  const double s = std::sin(delta);
  const double p = vn * vn * (d.g + d.self.real()) - vv * (d.g * c + d.b * s);
  const double q = -vn * vn * (d.b + d.self.imag()) - vv * (d.g * s - d.b * c);
  return {p, q};
}

std::vector<Complex> YBusInjections(const YBus& y,
                                    const std::vector<double>& vm,
                                    const std::vector<double>& va) {
  std::vector<Complex> v(y.n), s(y.n);
  for (std::size_t i = 0; i < y.n; ++i) v[i] = std::polar(vm[i], va[i]);
  for (std::size_t i = 0; i < y.n; ++i) {
    Complex current(0.0, 0.0);
    for (std::size_t j = 0; j < y.n; ++j) current += y(i, j) * v[j];
    s[i] = v[i] * std::conj(current);
  }
  return s;
}

std::vector<Complex> LineInjections(const PowerNetwork& net,
                                    const std::vector<DirectedLine>& lines,
                                    const std::vector<double>& vm,
                                    const std::vector<double>& va) {
  std::vector<Complex> s(net.num_buses(), Complex(0.0, 0.0));
  for (const DirectedLine& d : lines) s[d.n] += DirectedFlow(d, vm, va);
  for (std::size_t i = 0; i < net.num_buses(); ++i) {
    s[i] += vm[i] * vm[i] * std::conj(net.buses()[i].shunt);
  }
  return s;
}

std::vector<int> ConnectedComponents(const PowerNetwork& net) {
  const std::size_t n = net.num_buses();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t k = 0; k < net.num_lines(); ++k) {
    parent[find(net.from_index(k))] = find(net.to_index(k));
  }
  std::vector<int> label(n, -1), comp(n);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (label[r] < 0) label[r] = next++;
    comp[i] = label[r];
  }
  return comp;
}

}  // namespace lpac
