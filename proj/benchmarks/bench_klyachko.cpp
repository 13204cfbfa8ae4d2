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

#include "specmaj/klyachko.hpp"

using namespace specmaj;

static void BM_LrCoefficient(benchmark::State& state) {
  const Partition lam = {2, 1}, mu = {2, 1}, nu = {3, 2, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lr_coefficient(lam, mu, nu));
  }
}
BENCHMARK(BM_LrCoefficient);

// Steady-state cost of an admissible-tuple lookup: the table is memoized in
// memory after the first call, so this measures the per-decision overhead.
static void BM_AdmissibleLookup(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  EnumerationOptions opts;
  opts.use_memo = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_admissible(n, 2, opts));
  }
}
BENCHMARK(BM_AdmissibleLookup)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_FeasibleSum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RealVector l0(n), l1(n), l2(n);
  for (int i = 0; i < n; ++i) {
    l1(i) = n - i;
    l2(i) = 0.5 * (n - i);
    l0(i) = 1.5 * (n - i);
  }
  const Spectrum s0(l0), s1(l1), s2(l2);
  // warm the admissible-tuple cache outside the timed loop
  klyachko_feasible_sum(s0, {s1, s2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(klyachko_feasible_sum(s0, {s1, s2}));
  }
}
BENCHMARK(BM_FeasibleSum)->Arg(3)->Arg(4)->Arg(5);
