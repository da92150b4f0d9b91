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

#include "sentinel/exact_test.hpp"

using namespace sentinel;

static void BM_PowerCurve2000(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(power_curve(0.01, 0.02, 0.05, 1, 2000));
  }
}
BENCHMARK(BM_PowerCurve2000);

static void BM_MinSampleFirstHit(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        min_sample_size(0.01, 0.02, 0.05, 0.9, SampleSizeMode::kFirstHit));
  }
}
BENCHMARK(BM_MinSampleFirstHit);

static void BM_MinSampleStable(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_sample_size(0.01, 0.02, 0.05, 0.9, SampleSizeMode::kStable));
  }
}
BENCHMARK(BM_MinSampleStable);

static void BM_SingleScanStep(benchmark::State& state) {
  PowerScanner scan(0.01, 0.02, 0.05, 1);
  for (auto _ : state) {
    scan.advance();
    benchmark::DoNotOptimize(scan.power());
  }
}
BENCHMARK(BM_SingleScanStep);
