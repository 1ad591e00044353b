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

#include "lpac/restoration.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "lpac/ac_solver.hpp"

namespace lpac {

const char* ToString(RestorationVariant variant) {
  switch (variant) {
    case RestorationVariant::kLdc:
      return "LDC";
    case RestorationVariant::kLpac:
      return "LPAC";
    case RestorationVariant::kLpacR:
      return "LPAC-R";
    case RestorationVariant::kLpacRV:
      return "LPAC-R-V";
  }
  return "?";
}

RestorationVariant ParseRestorationVariant(const std::string& text) {
  std::string t;
  for (char ch : text) t.push_back(static_cast<char>(std::tolower(ch)));
  if (t == "ldc") return RestorationVariant::kLdc;
  if (t == "lpac") return RestorationVariant::kLpac;
  if (t == "lpac-r") return RestorationVariant::kLpacR;
  if (t == "lpac-r-v" || t == "lpac-rv") return RestorationVariant::kLpacRV;
  throw std::invalid_argument("unknown restoration variant '" + text + "'");
}

RestorationInstance MakeRestorationInstance(
    const PowerNetwork& net, const std::vector<std::size_t>& removed_lines,
    RestorationVariant variant) {
  std::vector<bool> removed(net.num_lines(), false);
  for (std::size_t k : removed_lines) {
    if (k >= net.num_lines()) {
      throw NetworkError("line index " + std::to_string(k) + " out of range");
    }
    removed[k] = true;
  }
  std::vector<LineRecord> lines;
  RestorationInstance inst;
  for (std::size_t k = 0; k < net.num_lines(); ++k) {
    if (removed[k]) {
      inst.removed_lines.push_back(k);
    } else {
      lines.push_back(net.lines()[k]);
    }
  }
  const PowerNetwork cut(net.base_mva(), net.buses(), lines,
                         net.generators());
  const std::vector<int> comp = ConnectedComponents(cut);
  const int live = comp[cut.slack_index()];
  std::vector<Bus> buses;
  for (std::size_t i = 0; i < cut.num_buses(); ++i) {
    if (comp[i] == live) {
      buses.push_back(cut.buses()[i]);
    } else {
      inst.dropped_buses.push_back(cut.buses()[i].id);
    }
  }
  std::vector<LineRecord> kept;
  for (std::size_t k = 0; k < cut.num_lines(); ++k) {
    if (comp[cut.from_index(k)] == live) kept.push_back(cut.lines()[k]);
  }
  std::vector<Generator> gens;
  for (const Generator& g : cut.generators()) {
    if (comp[cut.index_of(g.bus)] == live) gens.push_back(g);
  }
  inst.net = PowerNetwork(net.base_mva(), std::move(buses), std::move(kept),
                          std::move(gens));
  inst.original_load_p = net.total_load_p();
  inst.variant = variant;
  return inst;
}

std::uint64_t SampleSeed(std::uint64_t seed, int k, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

// Uniform integer in [0, bound) by rejection; std distributions are not
// reproducible across standard libraries.
std::uint64_t Below(std::mt19937_64& eng, std::uint64_t bound) {
  const std::uint64_t limit = eng.max() - eng.max() % bound;
  for (;;) {
    const std::uint64_t x = eng();
    if (x < limit) return x % bound;
  }
}

}  // namespace

RestorationInstance SampleContingency(const PowerNetwork& net, int k,
                                      std::uint64_t seed) {
  const std::size_t lines = net.num_lines();
  if (k < 0 || (k > 0 && static_cast<std::size_t>(k) >= lines)) {
    throw std::invalid_argument("k must be in [0, number of lines)");
  }
  if (k == 0) return MakeRestorationInstance(net, {});
  std::mt19937_64 eng(seed);
  std::vector<std::size_t> order(lines);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (int j = 0; j < k; ++j) {
      const std::size_t pick = j + Below(eng, lines - j);
      std::swap(order[j], order[pick]);
    }
    std::vector<std::size_t> chosen(order.begin(), order.begin() + k);
    std::sort(chosen.begin(), chosen.end());
    RestorationInstance inst = MakeRestorationInstance(net, chosen);
    if (inst.net.total_load_p() > 0.0) return inst;
  }
  throw std::runtime_error("no contingency with load on the slack island after "
                           "100 draws");
}

RestorationModel BuildRestoration(const RestorationInstance& inst) {
  const PowerNetwork& net = inst.net;
  const std::size_t n = net.num_buses();
  if (!inst.p_max.empty() && inst.p_max.size() != net.generators().size()) {
    throw std::invalid_argument("p_max needs one entry per generator");
  }
  if (!inst.q_max.empty() && inst.q_max.size() != net.generators().size()) {
    throw std::invalid_argument("q_max needs one entry per generator");
  }
  const std::vector<int> comp = ConnectedComponents(net);
  for (int c : comp) {
    if (c != comp[net.slack_index()]) {
      throw NetworkError("restoration network is not connected to the slack");
    }
  }
  std::vector<double> target = inst.warm_target;
  if (target.empty()) target = ColdVoltageEstimate(net, ColdVoltage::kSetpoint);
  if (target.size() != n) {
    throw std::invalid_argument("warm_target needs one entry per bus");
  }
  const bool ldc = inst.variant == RestorationVariant::kLdc;
  const bool q_caps = inst.variant == RestorationVariant::kLpacR ||
                      inst.variant == RestorationVariant::kLpacRV;
  ModelOptions mo;
  mo.cosine_segments = inst.cosine_segments;

  RestorationModel r;
  r.model = BuildModelCore(net, ldc ? ModelKind::kLdc : ModelKind::kWarm,
                           target, mo);
  LpacModel& m = r.model;
  m.lp.set_name(std::string("restore_") + ToString(inst.variant));
  r.load.assign(n, -1);
  r.p_gen.assign(n, -1);
  r.q_gen.assign(n, -1);
  LinearExpr objective;
  for (std::size_t i = 0; i < n; ++i) {
    const Bus& b = net.buses()[i];
    const std::string id = std::to_string(b.id);
    if (b.load != Complex(0.0, 0.0)) {
      r.load[i] = m.lp.AddVariable("load_" + id, 0.0, 1.0);
      objective.Add(r.load[i], 1.0);
    }
    const auto& gens = net.generators_at(i);
    if (gens.empty()) continue;
    double p_cap = 0.0, q_cap = 0.0;
    for (std::size_t g : gens) {
      p_cap += inst.p_max.empty() ? net.generators()[g].p_max : inst.p_max[g];
      q_cap += inst.q_max.empty() ? net.generators()[g].q_max : inst.q_max[g];
    }
    r.p_gen[i] = m.lp.AddVariable("pg_" + id, 0.0, p_cap);
    if (!ldc && net.is_voltage_controlled(i)) {
      const bool capped = q_caps && (inst.cap_slack_q || !net.is_slack(i));
      r.q_gen[i] = m.lp.AddVariable("qg_" + id, -kInfinity,
                                    capped ? q_cap : kInfinity);
    }
  }
  for (std::size_t k = 0; k < m.cos.size(); ++k) {
    if (m.cos[k] >= 0) objective.Add(m.cos[k], inst.cos_weight);
  }
  m.lp.SetObjective(Sense::kMaximize, objective);

  // p_n = p^g_n - pl_n l_n at every bus; q likewise, q^g only at G.
  for (std::size_t i = 0; i < n; ++i) {
    const Bus& b = net.buses()[i];
    const std::string id = std::to_string(b.id);
    LinearExpr p = m.p_bus[i];
    if (r.p_gen[i] >= 0) p.Add(r.p_gen[i], -1.0);
    if (r.load[i] >= 0) p.Add(r.load[i], b.load.real());
    m.lp.AddEquality("kcl_p_" + id, p, 0.0);
    if (ldc) continue;
    LinearExpr q = m.q_bus[i];
    if (r.q_gen[i] >= 0) q.Add(r.q_gen[i], -1.0);
    if (r.load[i] >= 0) q.Add(r.load[i], b.load.imag());
    m.lp.AddEquality("kcl_q_" + id, q, 0.0);
  }
  if (inst.variant == RestorationVariant::kLpacRV) {
    ConstraintOptions co;
    co.v_min = inst.v_min;
    co.v_max = inst.v_max;
    AddConstraints(m, co);
  }
  return r;
}

DispatchResult SolveRestoration(const RestorationInstance& inst,
                                const SolverOptions& options) {
  const RestorationModel r = BuildRestoration(inst);
  const LinearSolution s = SolveLinear(r.model, options);
  DispatchResult d;
  d.status = s.status;
  d.diagnostic = s.diagnostic;
  if (!s.optimal()) return d;
  const PowerNetwork& net = inst.net;
  const std::size_t n = net.num_buses();
  d.objective = s.objective;
  d.theta = s.theta;
  d.vm = s.vm;
  d.served.assign(n, 0.0);
  d.p_gen.assign(n, 0.0);
  d.q_gen.assign(n, 0.0);
  double served_p = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (r.load[i] >= 0) d.served[i] = s.x[r.load[i]];
    if (r.p_gen[i] >= 0) d.p_gen[i] = s.x[r.p_gen[i]];
    if (r.q_gen[i] >= 0) d.q_gen[i] = s.x[r.q_gen[i]];
    served_p += net.buses()[i].load.real() * d.served[i];
  }
  d.shed_percent = inst.original_load_p > 0.0
                       ? 100.0 * (1.0 - served_p / inst.original_load_p)
                       : 0.0;
  return d;
}

bool CheckAcFeasibility(const RestorationInstance& inst,
                        DispatchResult& d) {
  d.ac_checked = true;
  d.ac_feasible = false;
  d.ac_iterations = 0;
  if (!d.optimal()) return false;
  const PowerNetwork& net = inst.net;
  const std::size_t n = net.num_buses();
  std::vector<Bus> buses = net.buses();
  std::vector<Generator> gens = net.generators();
  for (std::size_t i = 0; i < n; ++i) {
    buses[i].load *= d.served[i];
    const auto& at = net.generators_at(i);
    if (at.empty()) continue;
    // Split the bus dispatch over its generators in proportion to capacity.
    double cap = 0.0;
    for (std::size_t g : at) {
      cap += inst.p_max.empty() ? net.generators()[g].p_max : inst.p_max[g];
    }
    for (std::size_t g : at) {
      const double own =
          inst.p_max.empty() ? net.generators()[g].p_max : inst.p_max[g];
      const double share = std::isfinite(cap) && cap > 0.0
                               ? own / cap
                               : 1.0 / static_cast<double>(at.size());
      gens[g].p_output = d.p_gen[i] * share;
    }
  }
  const PowerNetwork fixed(net.base_mva(), std::move(buses), net.lines(),
                           std::move(gens));
  AcOptions ao;
  ao.tolerance = inst.ac_tolerance;
  ao.max_iterations = inst.ac_max_iterations;
  ao.start = AcStart::kGiven;
  ao.va_start = d.theta;
  ao.vm_start = d.vm;
  const AcSolution ac = SolveAc(fixed, ao);
  d.ac_iterations = ac.iterations;
  d.ac_feasible = ac.converged;
  return d.ac_feasible;
}

const StudyCell* StudyTable::find(int k, RestorationVariant variant) const {
  for (const StudyCell& c : cells) {
    if (c.k == k && c.variant == variant) return &c;
  }
  return nullptr;
}

StudyTable RunStudy(const PowerNetwork& net, const StudyOptions& options) {
  StudyTable table;
  table.variants = options.variants;
  if (options.samples <= 0 || options.k_last < options.k_first) return table;
  for (int k = options.k_first; k <= options.k_last; ++k) {
    table.classes.push_back(k);
  }
  const std::size_t nv = options.variants.size();
  const std::size_t tasks = table.classes.size() * options.samples;

  struct Outcome {
    bool lp_ok = false;
    bool converged = false;
    double shed = 0.0;
  };
  std::vector<Outcome> outcomes(tasks * nv);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      try {
        const int k = table.classes[t / options.samples];
        const int index = static_cast<int>(t % options.samples);
        RestorationInstance inst =
            SampleContingency(net, k, SampleSeed(options.seed, k, index));
        if (options.configure) options.configure(inst);
        for (std::size_t v = 0; v < nv; ++v) {
          inst.variant = options.variants[v];
          DispatchResult d = SolveRestoration(inst, options.solver);
          CheckAcFeasibility(inst, d);
          Outcome& o = outcomes[t * nv + v];
          o.lp_ok = d.optimal();
          o.converged = d.ac_feasible;
          o.shed = d.shed_percent;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
        return;
      }
    }
  };
  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(tasks, 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  // Aggregate in a fixed order so the table does not depend on scheduling.
  for (std::size_t c = 0; c < table.classes.size(); ++c) {
    for (std::size_t v = 0; v < nv; ++v) {
      StudyCell cell;
      cell.k = table.classes[c];
      cell.variant = options.variants[v];
      cell.samples = options.samples;
      double shed = 0.0;
      for (int s = 0; s < options.samples; ++s) {
        const Outcome& o = outcomes[(c * options.samples + s) * nv + v];
        cell.converged += o.converged;
        if (o.lp_ok) {
          shed += o.shed;
        } else {
          ++cell.lp_failures;
        }
      }
      const int solved = cell.samples - cell.lp_failures;
      cell.mean_shed = solved > 0 ? shed / solved : 100.0;
      table.cells.push_back(cell);
    }
  }
  return table;
}

}  // namespace lpac
