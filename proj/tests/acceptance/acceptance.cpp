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


// Acceptance checks. Prints one PASS/FAIL line per criterion; the exit code
// is nonzero when any selected criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lpac/ac_solver.hpp"
#include "lpac/capacitor_placement.hpp"
#include "lpac/case_io.hpp"
#include "lpac/evaluation.hpp"
#include "lpac/lpac_models.hpp"
#include "lpac/pwl_cosine.hpp"
#include "lpac/restoration.hpp"
#include "test_support.hpp"

namespace lpac {
namespace {

using Clock = std::chrono::steady_clock;
using testing::CasePath;
using testing::HaveCase;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failure notes for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void Expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void Note(const std::string& what) { notes.push_back(what); }
};

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

struct Bench {
  const char* label;
  const char* file;
};

const std::vector<Bench> kTableBenches = {
    {"ieee14", "case14.m"},  {"mp24", "case24_ieee_rts.m"},
    {"ieee30", "case_ieee30.m"}, {"mp30", "case30.m"},
    {"mp39", "case39.m"},    {"ieee57", "case57.m"},
    {"ieee118", "case118.m"}};

bool Require(Check& c, const std::string& file) {
  if (HaveCase(file)) return true;
  c.Expect(false, "missing case file " + CasePath(file) +
                      " (fetch with tools/fetch_cases.sh)");
  return false;
}

void AcOracle(Check& c) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"case14.m", "case14"},
      {"case_ieee30.m", "case_ieee30"},
      {"case57.m", "case57"},
      {"case118.m", "case118"}};
  for (const auto& [file, stem] : cases) {
    if (!Require(c, file)) continue;
    const PowerNetwork net = LoadCase(CasePath(file));
    const auto t0 = Clock::now();
    const AcSolution ac = SolveAc(net);
    const double secs = Since(t0);
    c.Expect(ac.converged, stem + " did not converge: " + ac.diagnostic);
    if (!ac.converged) continue;
    const auto ref = testing::LoadReference(stem);
    c.Expect(ref.bus.size() == net.num_buses(), stem + " reference size");
    if (ref.bus.size() != net.num_buses()) continue;
    // Angles are compared relative to the slack bus.
    const double offset = ref.va[ref.slack_row(net.slack_id())];
    double dv = 0.0, da = 0.0;
    for (std::size_t r = 0; r < ref.bus.size(); ++r) {
      const std::size_t i = net.index_of(ref.bus[r]);
      dv = std::max(dv, std::abs(ac.vm[i] - ref.vm[r]));
      da = std::max(da, std::abs(ac.va[i] - ref.va[r] + offset));
    }
    c.Expect(dv <= 1e-4, stem + " |dV| " + Fmt(dv));
    c.Expect(da <= 1e-4, stem + " |dtheta| " + Fmt(da));
    c.Expect(secs < 1.0, stem + " took " + Fmt(secs) + " s");
    c.Note(stem + " dV=" + Fmt(dv) + " dA=" + Fmt(da) + " t=" + Fmt(secs));
  }
}

struct PublishedActive {
  double corr;
  double mean;
};

void ActiveTable(Check& c) {
  // Per benchmark: LDC, cold, warm.
  const std::map<std::string, std::array<PublishedActive, 3>> published = {
      {"ieee14", {{{.9994, 1.392}, {.9989, 1.636}, {1.0, .1689}}}},
      {"mp24", {{{.9989, 5.659}, {.9999, 1.884}, {1.0, .6621}}}},
      {"ieee30", {{{.9993, 1.046}, {.9998, .5475}, {1.0, .1847}}}},
      {"mp30", {{{.9993, .2964}, {.9995, .2396}, {.9999, .1052}}}},
      {"mp39", {{{.9995, 7.341}, {1.0, 2.142}, {1.0, 1.557}}}},
      {"ieee57", {{{.9989, 1.494}, {.9995, .9235}, {1.0, .2229}}}},
      {"ieee118", {{{.9963, 3.984}, {1.0, .622}, {.9999, .4386}}}}};
  const char* names[3] = {"ldc", "cold", "warm"};
  const auto t0 = Clock::now();
  for (const Bench& b : kTableBenches) {
    if (!Require(c, b.file)) continue;
    const PowerNetwork net = LoadCase(CasePath(b.file));
    const AcSolution ac = SolveAc(net);
    c.Expect(ac.converged, std::string(b.label) + " AC did not converge");
    if (!ac.converged) continue;
    const LpacModel models[3] = {BuildLdc(net), BuildLpacCold(net),
                                 BuildLpacWarm(net, ac.vm)};
    for (int k = 0; k < 3; ++k) {
      const LinearSolution s = SolveLinear(models[k]);
      const std::string tag = std::string(b.label) + " " + names[k];
      c.Expect(s.optimal(), tag + " LP " + s.diagnostic);
      if (!s.optimal()) continue;
      const AccuracyReport r = Compare(ac, s, net);
      const PublishedActive& p = published.at(b.label)[k];
      const double rel = std::abs(r.active.mean_abs - p.mean) / p.mean;
      c.Expect(rel <= 0.15, tag + " mean " + Fmt(r.active.mean_abs) +
                                " vs " + Fmt(p.mean));
      c.Expect(r.active.corr >= p.corr - 0.002,
               tag + " corr " + Fmt(r.active.corr) + " vs " + Fmt(p.corr));
    }
  }
  const double secs = Since(t0);
  c.Expect(secs < 120.0, "sweep took " + Fmt(secs) + " s");
  c.Note("sweep " + Fmt(secs) + " s");
}

void ReactiveVoltageTables(Check& c) {
  // Per benchmark: {cold Q, warm Q, cold V, warm V}.
  const std::map<std::string, std::array<double, 4>> published = {
      {"ieee14", {.7459, .8689, .003524, .0005479}},
      {"mp24", {1.505, 1.505, .000676, .000542}},
      {"ieee30", {.4962, .3455, .002445, .001426}},
      {"mp30", {.3135, .3135, .002186, .0003884}},
      {"mp39", {3.898, 4.03, .0007521, .00154}},
      {"ieee57", {.5316, .3853, .01038, .002138}},
      {"ieee118", {.7676, .6326, .000717, .0001961}}};
  for (const Bench& b : kTableBenches) {
    if (!Require(c, b.file)) continue;
    const PowerNetwork net = LoadCase(CasePath(b.file));
    const AcSolution ac = SolveAc(net);
    if (!ac.converged) {
      c.Expect(false, std::string(b.label) + " AC did not converge");
      continue;
    }
    const LpacModel models[2] = {BuildLpacCold(net), BuildLpacWarm(net, ac.vm)};
    const char* names[2] = {"cold", "warm"};
    for (int k = 0; k < 2; ++k) {
      const LinearSolution s = SolveLinear(models[k]);
      const std::string tag = std::string(b.label) + " " + names[k];
      if (!s.optimal()) {
        c.Expect(false, tag + " LP " + s.diagnostic);
        continue;
      }
      const AccuracyReport r = Compare(ac, s, net);
      const double pq = published.at(b.label)[k];
      const double pv = published.at(b.label)[2 + k];
      c.Expect(std::abs(r.reactive.mean_abs - pq) <= 0.2 * pq,
               tag + " Q " + Fmt(r.reactive.mean_abs) + " vs " + Fmt(pq));
      c.Expect(std::abs(r.voltage.mean_abs - pv) <= 0.2 * pv,
               tag + " V " + Fmt(r.voltage.mean_abs) + " vs " + Fmt(pv));
    }
  }
}

void AblationOrdering(Check& c) {
  for (const Bench& b : kTableBenches) {
    if (!Require(c, b.file)) continue;
    const PowerNetwork net = LoadCase(CasePath(b.file));
    const AcSolution ac = SolveAc(net);
    if (!ac.converged) {
      c.Expect(false, std::string(b.label) + " AC did not converge");
      continue;
    }
    auto cumulative = [&](const LpacModel& m, bool& ok) {
      const LinearSolution s = SolveLinear(m);
      ok = s.optimal();
      return ok ? CumulativeErrors(ac, s, net) : CumulativeErrorReport{};
    };
    bool ok = true;
    const CumulativeErrorReport base = cumulative(BuildLpacCold(net), ok);
    c.Expect(ok, std::string(b.label) + " cold LP failed");
    for (Variant v : {Variant::C(), Variant::G(), Variant::GC()}) {
      ModelOptions mo;
      mo.variant = v;
      bool vok = true;
      const CumulativeErrorReport r = cumulative(BuildLpacCold(net, mo), vok);
      const std::string tag = std::string(b.label) + " cold" + v.suffix();
      c.Expect(vok, tag + " LP failed");
      c.Expect(!vok || base.q_bus < r.q_bus,
               tag + " q_n " + Fmt(r.q_bus) + " not above " + Fmt(base.q_bus));
    }
    if (std::string(b.label) == "ieee118") {
      bool lok = true;
      const CumulativeErrorReport ldc = cumulative(BuildLdc(net), lok);
      c.Expect(lok && ldc.p_bus >= 3.0 * base.p_bus,
               "ieee118 p_n LDC " + Fmt(ldc.p_bus) + " vs LPAC " +
                   Fmt(base.p_bus));
      c.Note("ieee118 p_n LDC " + Fmt(ldc.p_bus) + " LPAC " + Fmt(base.p_bus));
    }
  }
}

void PwlProperties(Check& c) {
  const double lo = -std::numbers::pi / 3, hi = std::numbers::pi / 3;
  const PwlCosine pwl(lo, hi, 20);
  double worst = 0.0, lowest = 0.0, chord = -1.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = lo + (hi - lo) * (i + 0.5) / 10000.0;
    const double gap = pwl.Envelope(x) - std::cos(x);
    worst = std::max(worst, gap);
    lowest = std::min(lowest, gap);
    chord = std::max(chord, pwl.Chord(x) - std::cos(x));
  }
  double exact = 0.0;
  for (double t : pwl.tangent_points()) {
    exact = std::max(exact, std::abs(pwl.Envelope(t) - std::cos(t)));
  }
  c.Expect(lowest >= 0.0, "envelope below cos by " + Fmt(-lowest));
  c.Expect(worst <= 2.5e-3, "envelope gap " + Fmt(worst));
  c.Expect(chord <= 0.0, "chord above cos by " + Fmt(chord));
  c.Expect(exact <= 1e-12, "tangent-point error " + Fmt(exact));
  c.Note("max gap " + Fmt(worst));
}

void RestorationStudy(Check& c) {
  if (!Require(c, "case_ieee30.m")) return;
  const PowerNetwork net = LoadCase(CasePath("case_ieee30.m"));
  StudyOptions opt;
  opt.samples = 100;
  const auto t0 = Clock::now();
  const StudyTable table = RunStudy(net, opt);
  const double secs = Since(t0);
  c.Expect(secs < 600.0, "study took " + Fmt(secs) + " s");
  using RV = RestorationVariant;
  const std::vector<RV> order = {RV::kLdc, RV::kLpac, RV::kLpacR, RV::kLpacRV};
  int rv_conv = 0, rv_total = 0;
  for (int k = 3; k <= 20; ++k) {
    std::vector<const StudyCell*> row;
    for (RV v : order) row.push_back(table.find(k, v));
    // The published N-11 row is the only one that is not ordered.
    if (k != 11) {
      for (std::size_t j = 0; j + 1 < row.size(); ++j) {
        c.Expect(row[j]->converged <= row[j + 1]->converged,
                 "N-" + std::to_string(k) + " " + ToString(order[j]) + " " +
                     std::to_string(row[j]->converged) + " > " +
                     ToString(order[j + 1]) + " " +
                     std::to_string(row[j + 1]->converged));
      }
    }
    rv_conv += row[3]->converged;
    rv_total += row[3]->samples;
  }
  const double rate = 100.0 * rv_conv / std::max(1, rv_total);
  c.Expect(rate >= 97.0, "LPAC-R-V convergence " + Fmt(rate) + "%");
  const std::map<int, std::array<double, 4>> shed = {
      {15, {81.91, 81.92, 81.92, 81.92}}, {16, {86.21, 86.31, 86.32, 86.32}},
      {17, {89.89, 89.89, 89.89, 89.89}}, {18, {88.26, 88.3, 88.32, 88.32}},
      {19, {85.9, 86.13, 86.13, 86.13}},  {20, {86.2, 86.37, 86.38, 86.38}}};
  for (const auto& [k, want] : shed) {
    for (std::size_t j = 0; j < order.size(); ++j) {
      const double got = table.find(k, order[j])->mean_shed;
      c.Expect(std::abs(got - want[j]) <= 3.0,
               "N-" + std::to_string(k) + " " + ToString(order[j]) + " shed " +
                   Fmt(got) + "% vs " + Fmt(want[j]) + "%");
    }
  }
  c.Note("R-V convergence " + Fmt(rate) + "%, " + Fmt(secs) + " s");
}

void CapacitorPlacement(Check& c) {
  if (!Require(c, "case57.m")) return;
  const PowerNetwork net = MakeIeee57c(LoadCase(CasePath("case57.m")));
  const std::vector<double> floors = {0.885, 0.935, 0.96, 0.975,
                                      0.9775, 0.98, 0.984};
  SolverOptions so;
  so.time_limit_seconds = 600.0;
  int previous = -1;
  std::string counts;
  for (std::size_t r = 0; r < floors.size(); ++r) {
    CppInstance inst;
    inst.net = net;
    inst.qc_max_mvar = 30.0;
    inst.v_min = floors[r];
    CppSolution sol = SolveCpp(inst, so);
    const std::string tag = "v_min " + Fmt(floors[r]);
    c.Expect(sol.optimal(), tag + " MIP " + sol.diagnostic);
    c.Expect(sol.seconds <= 600.0, tag + " took " + Fmt(sol.seconds) + " s");
    if (!sol.optimal()) continue;
    counts += (counts.empty() ? "" : ",") + std::to_string(sol.count);
    c.Expect(sol.count >= previous, tag + " count not monotone");
    previous = sol.count;
    if (r < 2) {
      const int want = r == 0 ? 1 : 3;
      c.Expect(sol.count == want, tag + " count " + std::to_string(sol.count) +
                                      " vs " + std::to_string(want));
      VerifyCpp(inst, sol);
      c.Expect(sol.ac_converged, tag + " AC check " + sol.ac_diagnostic);
      c.Expect(sol.v_low_violation == 0.0 && sol.v_high_violation == 0.0 &&
                   sol.q_violation == 0.0,
               tag + " AC violations low " + Fmt(sol.v_low_violation) +
                   " high " + Fmt(sol.v_high_violation) + " q " +
                   Fmt(sol.q_violation));
    }
  }
  c.Note("counts " + counts);
}

// Runs the property suite binary against an empty case directory.
void PropertySuites(Check& c) {
#ifdef LPAC_PROPERTY_TESTS
  const std::string cmd = std::string("LPAC_CASE_DIR=/nonexistent \"") +
                          LPAC_PROPERTY_TESTS + "\" --gtest_brief=1";
  const int rc = std::system(cmd.c_str());
  c.Expect(rc == 0, "property suite exit status " + std::to_string(rc));
#else
  c.Expect(false, "property suite binary not configured");
#endif
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Check&)> run;
};

int Main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "AC oracle validity", AcOracle},
      {2, "active power accuracy", ActiveTable},
      {3, "reactive and voltage accuracy", ReactiveVoltageTables},
      {4, "ablation ordering", AblationOrdering},
      {5, "piecewise-linear cosine", PwlProperties},
      {6, "restoration study", RestorationStudy},
      {7, "capacitor placement", CapacitorPlacement},
      {8, "property suites", PropertySuites}};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: lpac_acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::cerr << "criterion must be 1.." << all.size() << "\n";
    return 2;
  }
  bool failed = false;
  for (const Criterion& cr : all) {
    if (only && cr.id != only) continue;
    Check c;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.Expect(false, std::string("exception: ") + e.what());
    }
    for (const std::string& n : c.notes) std::cout << "  " << n << "\n";
    for (const std::string& f : c.failures) std::cout << "  x " << f << "\n";
    const bool ok = c.failures.empty();
    failed = failed || !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": "
              << cr.name << "\n";
  }
  return failed ? 1 : 0;
}

}  // namespace
}  // namespace lpac

int main(int argc, char** argv) { return lpac::Main(argc, argv); }
