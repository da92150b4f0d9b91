// Copyright 2026 The Sentinel Authors
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

#include "sentinel/distributions.hpp"

using namespace sentinel;

static void BM_BinomialPmf(benchmark::State& state) {
  const BinomialLaw law{state.range(0), 0.01};
  const std::int64_t x = law.n / 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pmf(law, x));
  }
}
BENCHMARK(BM_BinomialPmf)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_BinomialCdfNearMode(benchmark::State& state) {
  const BinomialLaw law{state.range(0), 0.01};
  const double x = static_cast<double>(law.n) * 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdf(law, x));
  }
}
BENCHMARK(BM_BinomialCdfNearMode)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_BinomialQuantile(benchmark::State& state) {
  const BinomialLaw law{state.range(0), 0.01};
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantile(law, 0.95));
  }
}
BENCHMARK(BM_BinomialQuantile)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_PoissonSf(benchmark::State& state) {
  const PoissonLaw law{19.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf(law, 30.0));
  }
}
BENCHMARK(BM_PoissonSf);

static void BM_TruncateNegBin(benchmark::State& state) {
  const DiscreteDist law{NegBinLaw{19.5, 7.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(truncate(law));
  }
}
BENCHMARK(BM_TruncateNegBin);
