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


#include <benchmark/benchmark.h>

#include "bench_cases.hpp"
#include "lpac/ac_solver.hpp"

namespace lpac {
namespace {

void BM_SolveAc(benchmark::State& state, const char* file) {
  if (!bench::HaveCase(file)) {
    state.SkipWithError("case file missing");
    return;
  }
  const PowerNetwork net = LoadCase(bench::CasePath(file));
  for (auto _ : state) {
    AcSolution ac = SolveAc(net);
    benchmark::DoNotOptimize(ac.vm.data());
  }
}

BENCHMARK_CAPTURE(BM_SolveAc, ieee14, "case14.m")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveAc, ieee57, "case57.m")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveAc, ieee118, "case118.m")->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lpac
