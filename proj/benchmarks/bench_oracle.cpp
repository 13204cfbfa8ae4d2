/*
 * Copyright 2026 the specmaj authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "specmaj/oracle.hpp"

using namespace specmaj;

static void BM_RealizeSpectraSum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RealVector l1(n), l2(n), l0(n);
  for (int i = 0; i < n; ++i) {
    l1(i) = n - i;
    l2(i) = i < n / 2 ? 1.0 : 0.0;
    l0(i) = l1(i) + l2(n - 1 - i);
  }
  const Spectrum s0{l0}, s1{l1}, s2{l2};
  OracleBudget budget;
  budget.restarts = 4;
  budget.iterations = 400;
  for (auto _ : state) {
    benchmark::DoNotOptimize(realize_spectra_sum(s0, {s1, s2}, budget));
  }
}
BENCHMARK(BM_RealizeSpectraSum)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);
