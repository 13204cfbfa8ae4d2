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

#include "specmaj/majorization.hpp"
#include "specmaj/random.hpp"

using namespace specmaj;

static void BM_EigSorted(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HermitianMatrix a = random_hermitian(n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_sorted(a));
  }
}
BENCHMARK(BM_EigSorted)->Arg(4)->Arg(8)->Arg(16);

static void BM_SchurHorn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RealVector y(n);
  for (int i = 0; i < n; ++i) y(i) = n - i;
  const RealVector x = random_majorized_below(y, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(schur_horn_construct(x, y));
  }
}
BENCHMARK(BM_SchurHorn)->Arg(4)->Arg(8)->Arg(16);

static void BM_RandomUnitary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_unitary(n, ++seed));
  }
}
BENCHMARK(BM_RandomUnitary)->Arg(4)->Arg(16);
