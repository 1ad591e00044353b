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

#include <algorithm>
#include <bit>

#include "lpac/ac_solver.hpp"
#include "lpac/capacitor_placement.hpp"
#include "lpac/case_io.hpp"
#include "test_support.hpp"

namespace lpac {
namespace {

#define REQUIRE_CASE(file) \
  if (!lpac::testing::HaveCase(file)) GTEST_SKIP() << file << " absent"

CppInstance Ieee57c(double v_min) {
  CppInstance inst{MakeIeee57c(LoadCase(lpac::testing::CasePath("case57.m")))};
  inst.qc_max_mvar = 30.0;
  inst.v_min = v_min;
  return inst;
}

// case5_tx with heavier loads so a high voltage floor needs support.
CppInstance StressedFixture(double v_min) {
  const PowerNetwork base =
      LoadCase(lpac::testing::FixturePath("case5_tx.m"));
  std::vector<Bus> buses = base.buses();
  for (Bus& b : buses) b.load *= 1.6;
  CppInstance inst{
      PowerNetwork(base.base_mva(), buses, base.lines(), base.generators())};
  inst.qc_max_mvar = 30.0;
  inst.v_min = v_min;
  inst.v_max = 1.1;
  return inst;
}

TEST(Ieee57c, Construction) {
  REQUIRE_CASE("case57.m");
  const PowerNetwork orig = LoadCase(lpac::testing::CasePath("case57.m"));
  const PowerNetwork net = MakeIeee57c(orig);
  for (const LineRecord& l : net.lines()) EXPECT_EQ(l.Tap(), 1.0);
  for (const Generator& g : net.generators()) EXPECT_NE(g.p_output, 0.0);
  EXPECT_LT(net.generators().size(), orig.generators().size());
  const AcSolution ac = SolveAc(net);
  ASSERT_TRUE(ac.converged);
  EXPECT_LT(*std::min_element(ac.vm.begin(), ac.vm.end()), 0.9);
}

TEST(Cpp, ZeroFloorNeedsNothing) {
  const CppInstance inst = StressedFixture(0.0);
  const CppSolution s = SolveCpp(inst);
  ASSERT_TRUE(s.optimal()) << s.diagnostic;
  EXPECT_EQ(s.count, 0);
}

TEST(Cpp, RejectsBadParameters) {
  CppInstance inst = StressedFixture(0.9);
  inst.qc_max_mvar = 0.0;
  EXPECT_THROW(BuildCpp(inst), std::invalid_argument);
  inst = StressedFixture(1.2);
  EXPECT_THROW(BuildCpp(inst), std::invalid_argument);
}

TEST(Cpp, MatchesExhaustivePlacement) {
  for (double floor : {0.97, 0.99, 1.0, 1.01}) {
    const CppInstance inst = StressedFixture(floor);
    const CppSolution mip = SolveCpp(inst);
    const CppModel base = BuildCpp(inst);
    std::vector<int> cand;
    for (int c : base.c) {
      if (c >= 0) cand.push_back(c);
    }
    ASSERT_LE(cand.size(), 12u);
    int best = -1;
    for (unsigned mask = 0; mask < (1u << cand.size()); ++mask) {
      const int count = std::popcount(mask);
      if (best >= 0 && count >= best) continue;
      CppModel fixed = BuildCpp(inst);
      for (std::size_t j = 0; j < cand.size(); ++j) {
        const double v = (mask >> j & 1) ? 1.0 : 0.0;
        fixed.model.lp.SetBounds(cand[j], v, v);
      }
      if (SolveLp(fixed.model.lp).optimal()) best = count;
    }
    if (best < 0) {
      EXPECT_EQ(mip.status, SolveStatus::kInfeasible) << floor;
    } else {
      ASSERT_TRUE(mip.optimal()) << floor;
      EXPECT_EQ(mip.count, best) << floor;
    }
  }
}

TEST(Cpp, CapacitorsOnlyWhereChosen) {
  const CppInstance inst = StressedFixture(1.0);
  const CppSolution s = SolveCpp(inst);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(static_cast<int>(s.placed.size()), s.count);
  for (std::size_t i = 0; i < inst.net.num_buses(); ++i) {
    const int id = inst.net.buses()[i].id;
    const bool placed =
        std::find(s.placed.begin(), s.placed.end(), id) != s.placed.end();
    if (!placed) EXPECT_NEAR(s.qc[i], 0.0, 1e-7) << id;
    EXPECT_LE(s.qc[i], inst.qc_max_mvar + 1e-7);
  }
}

TEST(Cpp, Ieee57cLowFloors) {
  REQUIRE_CASE("case57.m");
  const double floors[] = {0.885, 0.935};
  const int expect[] = {1, 3};
  for (int r = 0; r < 2; ++r) {
    const CppInstance inst = Ieee57c(floors[r]);
    CppSolution s = SolveCpp(inst);
    ASSERT_TRUE(s.optimal()) << floors[r];
    EXPECT_EQ(s.count, expect[r]) << floors[r];
    VerifyCpp(inst, s);
    ASSERT_TRUE(s.ac_converged);
    EXPECT_GE(s.v_low_violation, -1e-6);
    EXPECT_LE(s.v_high_violation, 1e-6);
    EXPECT_LE(s.q_violation, 1e-4);
  }
}

TEST(Cpp, HealthyIeee57WithoutCapacitors) {
  REQUIRE_CASE("case57.m");
  CppInstance inst{LoadCase(lpac::testing::CasePath("case57.m"))};
  inst.v_min = 0.9;
  CppSolution s;
  s.status = SolveStatus::kOptimal;
  VerifyCpp(inst, s);
  ASSERT_TRUE(s.ac_converged);
  EXPECT_GT(s.min_vm, 0.9);
  EXPECT_EQ(s.v_low_violation, 0.0);
  // Generator setpoints push a few buses above 1.05 in the base case.
  EXPECT_DOUBLE_EQ(s.v_high_violation, std::max(0.0, s.max_vm - 1.05));
}

}  // namespace
}  // namespace lpac
