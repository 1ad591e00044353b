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


#include <gtest/gtest.h>

#include <cmath>

#include "lpac/ac_solver.hpp"
#include "lpac/case_io.hpp"
#include "test_support.hpp"

namespace lpac {
namespace {

PowerNetwork TwoBusLoad(double p) {
  std::vector<Bus> buses(2);
  buses[0].id = 1;
  buses[0].kind = BusKind::kSlack;
  buses[1].id = 2;
  buses[1].load = {p, 0.0};
  LineRecord l;
  l.from = 1;
  l.to = 2;
  l.series_impedance = {0.0, 0.1};
  Generator g;
  g.bus = 1;
  return PowerNetwork(100.0, buses, {l}, {g});
}

void ExpectMatchesReference(const PowerNetwork& net, const AcSolution& ac,
                            const std::string& stem, double tol) {
  const auto ref = lpac::testing::LoadReference(stem);
  ASSERT_EQ(ref.bus.size(), net.num_buses()) << stem;
  // The solver references angles to the slack; the oracle keeps its case
  // angle (30 degrees on case118).
  const double offset = ref.va[ref.slack_row(net.slack_id())];
  for (std::size_t k = 0; k < ref.bus.size(); ++k) {
    const std::size_t i = net.index_of(ref.bus[k]);
    EXPECT_NEAR(ac.vm[i], ref.vm[k], tol) << stem << " bus " << ref.bus[k];
    EXPECT_NEAR(ac.va[i], ref.va[k] - offset, tol)
        << stem << " bus " << ref.bus[k];
  }
}

TEST(AcSolver, TwoBusHandSolution) {
  const AcSolution ac = SolveAc(TwoBusLoad(0.1));
  ASSERT_TRUE(ac.converged) << ac.diagnostic;
  // sin(t) cos(t) = 0.01 and V = cos(t) for a lossless line with x = 0.1.
  const double t = 0.5 * std::asin(0.02);
  EXPECT_NEAR(ac.va[1], -t, 1e-9);
  EXPECT_NEAR(ac.vm[1], std::cos(t), 1e-9);
  EXPECT_NEAR(ac.va[1], -0.010001, 1e-6);
  EXPECT_NEAR(ac.vm[1], 0.99995, 1e-5);
}

TEST(AcSolver, ZeroLoadIsFlat) {
  const AcSolution ac = SolveAc(TwoBusLoad(0.0));
  ASSERT_TRUE(ac.converged);
  EXPECT_LE(ac.iterations, 1);
  EXPECT_NEAR(ac.va[1], 0.0, 1e-12);
  EXPECT_NEAR(ac.vm[1], 1.0, 1e-12);
}

TEST(AcSolver, FixturesMatchIndependentSolver) {
  for (const char* stem : {"case3", "case5_tx"}) {
    const PowerNetwork net =
        LoadCase(lpac::testing::FixturePath(std::string(stem) + ".m"));
    const AcSolution ac = SolveAc(net);
    ASSERT_TRUE(ac.converged) << stem << ": " << ac.diagnostic;
    ExpectMatchesReference(net, ac, stem, 1e-8);
  }
}

TEST(AcSolver, BenchmarksMatchIndependentSolver) {
  int checked = 0;
  for (const char* stem : {"case14", "case_ieee30", "case30", "case24_ieee_rts",
                           "case39", "case57", "case118"}) {
    const std::string file = std::string(stem) + ".m";
    if (!lpac::testing::HaveCase(file)) continue;
    const PowerNetwork net = LoadCase(lpac::testing::CasePath(file));
    const AcSolution ac = SolveAc(net);
    ASSERT_TRUE(ac.converged) << stem << ": " << ac.diagnostic;
    ExpectMatchesReference(net, ac, stem, 1e-6);
    ++checked;
  }
  if (checked == 0) GTEST_SKIP() << "no benchmark cases";
}

TEST(AcSolver, SingularJacobianIsReportedNotThrown) {
  std::vector<Bus> buses(3);
  for (int i = 0; i < 3; ++i) buses[i].id = i + 1;
  buses[0].kind = BusKind::kSlack;
  buses[2].load = {0.1, 0.05};  // bus 3 has no lines
  LineRecord l;
  l.from = 1;
  l.to = 2;
  l.series_impedance = {0.01, 0.1};
  Generator g;
  g.bus = 1;
  const PowerNetwork net(100.0, buses, {l}, {g});
  AcSolution ac;
  ASSERT_NO_THROW(ac = SolveAc(net));
  EXPECT_FALSE(ac.converged);
  EXPECT_FALSE(ac.diagnostic.empty());
}

TEST(AcSolver, IterationLimitReported) {
  const PowerNetwork net = LoadCase(lpac::testing::FixturePath("case5_tx.m"));
  AcOptions o;
  o.max_iterations = 1;
  const AcSolution ac = SolveAc(net, o);
  EXPECT_FALSE(ac.converged);
  EXPECT_EQ(ac.diagnostic, "iteration limit reached");
}

TEST(AcSolver, GivenStartConvergesToSameSolution) {
  const PowerNetwork net = LoadCase(lpac::testing::FixturePath("case5_tx.m"));
  const AcSolution flat = SolveAc(net);
  AcOptions o;
  o.start = AcStart::kGiven;
  o.vm_start = flat.vm;
  o.va_start = flat.va;
  const AcSolution warm = SolveAc(net, o);
  ASSERT_TRUE(warm.converged);
  EXPECT_LE(warm.iterations, 1);
  for (std::size_t i = 0; i < net.num_buses(); ++i) {
    EXPECT_NEAR(warm.vm[i], flat.vm[i], 1e-10);
  }
}

TEST(AcSolver, ReactiveLimitsPinTheViolator) {
  PowerNetwork base = LoadCase(lpac::testing::FixturePath("case3.m"));
  std::vector<Generator> gens = base.generators();
  gens[1].q_max = 0.05;
  const PowerNetwork net(base.base_mva(), base.buses(), base.lines(), gens);
  const AcSolution free_q = SolveAc(net);
  const std::size_t pv = net.index_of(2);
  ASSERT_GT(free_q.injection[pv].imag() + net.buses()[pv].load.imag(), 0.05);
  AcOptions o;
  o.enforce_q_limits = true;
  const AcSolution capped = SolveAc(net, o);
  ASSERT_TRUE(capped.converged);
  EXPECT_NEAR(capped.injection[pv].imag() + net.buses()[pv].load.imag(), 0.05,
              1e-8);
  EXPECT_LT(capped.vm[pv], net.buses()[pv].voltage_setpoint);
}

TEST(KclResidual, ConvergedSolutionBalances) {
  const PowerNetwork net = LoadCase(lpac::testing::FixturePath("case5_tx.m"));
  const AcSolution ac = SolveAc(net);
  EXPECT_LE(ComputeKclResidual(net, ac.vm, ac.va).max_enforced, 1e-8);
}

TEST(KclResidual, PerturbationOnlyTouchesIncidentBuses) {
  const PowerNetwork net = LoadCase(lpac::testing::FixturePath("case5_tx.m"));
  const AcSolution ac = SolveAc(net);
  std::vector<double> va = ac.va;
  const std::size_t moved = net.index_of(5);
  va[moved] += 0.01;
  const KclResidual r = ComputeKclResidual(net, ac.vm, va);
  std::vector<bool> incident(net.num_buses(), false);
  incident[moved] = true;
  for (std::size_t k = 0; k < net.num_lines(); ++k) {
    if (net.from_index(k) == moved) incident[net.to_index(k)] = true;
    if (net.to_index(k) == moved) incident[net.from_index(k)] = true;
  }
  for (std::size_t i = 0; i < net.num_buses(); ++i) {
    const double size = std::abs(r.mismatch[i] -
                                 ComputeKclResidual(net, ac.vm, ac.va).mismatch[i]);
    if (incident[i]) {
      EXPECT_GT(size, 1e-4) << "bus index " << i;
    } else {
      EXPECT_LT(size, 1e-12) << "bus index " << i;
    }
  }
}

}  // namespace
}  // namespace lpac
