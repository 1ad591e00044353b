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

#include <random>
#include <string>

#include "lpac/lp_backend.hpp"

namespace lpac {
namespace {

// Random boxed LP with n variables and n/2 rows.
LinearProgram RandomLp(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LinearProgram lp;
  LinearExpr obj;
  for (int j = 0; j < n; ++j) {
    lp.AddVariable("x" + std::to_string(j), -1.0, 1.0);
    obj.Add(j, u(rng));
  }
  for (int r = 0; r < n / 2; ++r) {
    LinearExpr e;
    for (int j = 0; j < n; ++j) e.Add(j, u(rng));
    lp.AddLessEqual("r" + std::to_string(r), e, 0.5);
  }
  lp.SetObjective(Sense::kMaximize, obj);
  return lp;
}

void BM_DenseSimplex(benchmark::State& state) {
  const LinearProgram lp = RandomLp(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    SolveResult r = SolveLp(lp);
    benchmark::DoNotOptimize(r.objective);
  }
}

BENCHMARK(BM_DenseSimplex)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lpac
