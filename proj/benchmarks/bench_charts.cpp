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

#include <vector>

#include "sentinel/cusum.hpp"
#include "sentinel/glr.hpp"
#include "sentinel/rng.hpp"

using namespace sentinel;

static void BM_ArlLattice(benchmark::State& state) {
  const CusumConfig cfg = CusumConfig::from_rates(19.5, 29.25, 12.0);
  const MarkovOptions opts{static_cast<int>(state.range(0)), false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(arl_markov(cfg, 19.5, opts).mean_run_length);
  }
}
BENCHMARK(BM_ArlLattice)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_ArlMonteCarlo1k(benchmark::State& state) {
  const CusumConfig cfg = CusumConfig::from_rates(19.5, 29.25, 8.0);
  MonteCarloOptions mc;
  mc.replications = 1000;
  mc.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(arl_monte_carlo(cfg, 19.5, mc).mean_run_length);
  }
}
BENCHMARK(BM_ArlMonteCarlo1k)->Unit(benchmark::kMillisecond);

static void BM_GlrMonitorYear(benchmark::State& state) {
  GlrConfig cfg;
  cfg.baseline_mean = 19.5;
  cfg.dispersion = 7.0;
  cfg.threshold = 1e9;
  cfg.max_window = 52;
  auto gen = make_engine(5);
  std::vector<std::int64_t> counts(365);
  for (auto& c : counts) c = sample_negbin(19.5, 7.0, gen);
  for (auto _ : state) {
    benchmark::DoNotOptimize(monitor(counts, cfg));
  }
}
BENCHMARK(BM_GlrMonitorYear)->Unit(benchmark::kMillisecond);
