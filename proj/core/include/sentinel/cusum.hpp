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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace sentinel {

// One-sided Poisson CUSUM chart on daily counts:
//   C_t = max(0, C_{t-1} + D_t - k),  alarm when C_t > h.
// k is the likelihood-ratio reference value between the in-control and a
// design out-of-control mean; h is calibrated to a target in-control
// average run length either by a discretized-chain solve or by simulation.

struct CusumConfig {
  double lambda0 = 1.0;  // in-control mean of the daily counts
  double lambda1 = 2.0;  // design out-of-control mean, > lambda0
  double k = 0.0;        // reference value, strictly between the two means
  double h = 1.0;        // control limit, > 0 (0 allowed: alarm on any positive excursion)

  /// Fills k with the sequential-likelihood-ratio reference value.
  static CusumConfig from_rates(double lambda0, double lambda1, double h);
};

void validate(const CusumConfig& cfg);

/// k = (lambda1 - lambda0) / (ln lambda1 - ln lambda0); lies strictly
/// between the two means.
double reference_value(double lambda0, double lambda1);

struct CusumState {
  double c = 0.0;
  std::int64_t t = 0;
  bool alarmed = false;
};

CusumState cusum_step(CusumState state, std::int64_t d, const CusumConfig& cfg);

struct RunLength {
  std::int64_t t = 0;     // first alarm time, or the stream length when censored
  bool censored = false;  // stream ended before any alarm
};

/// First t with C_t > h starting from C_0 = 0.
RunLength run_length(const CusumConfig& cfg, std::span<const std::int64_t> counts);

struct CusumTracePoint {
  std::int64_t t = 0;
  std::int64_t d = 0;
  double c = 0.0;
  bool alarmed = false;
};

std::vector<CusumTracePoint> chart_trace(const CusumConfig& cfg,
                                         std::span<const std::int64_t> counts);

/// Plot-ready rows "t,d,c,alarmed".
void write_trace_csv(std::ostream& os, const std::vector<CusumTracePoint>& trace);

struct ArlEstimate {
  double mean_run_length = 0.0;
  enum class Method { kMarkov, kMonteCarlo } method = Method::kMarkov;
  double ci_halfwidth = 0.0;  // 95% CI halfwidth; 0 for the chain solve
  std::int64_t replications = 0;
  std::int64_t censored = 0;  // simulated runs that hit the step cap
};

struct MarkovOptions {
  int states = 1000;              // lattice resolution on [0, h]
  bool convergence_check = true;  // also solve at twice the resolution
};

/// Zero-start average run length of the chart fed with Poisson(lambda)
/// counts, via a lattice discretization of the statistic and a linear
/// solve. Deterministic. Throws DiscretizationTooCoarse when doubling the
/// resolution moves the answer by more than 0.5%.
ArlEstimate arl_markov(const CusumConfig& cfg, double lambda, const MarkovOptions& opts = {});

struct MonteCarloOptions {
  std::int64_t replications = 10'000;
  std::uint64_t seed = 1;
  std::int64_t max_steps = 1'000'000;  // per-replication cap; hits are censored
};

/// Simulated average run length; reproducible per seed, replications merge
/// by index.
ArlEstimate arl_monte_carlo(const CusumConfig& cfg, double lambda, const MonteCarloOptions& opts);

struct CalibrationOptions {
  double grid_step = 0.01;   // h is reported on this grid
  double h_max = 1000.0;     // search cap
  MarkovOptions markov{600, false};  // resolution used during the search
};

/// Smallest h on the grid whose in-control run length reaches target_arl.
/// Throws UnreachableTarget past the cap.
double calibrate_h(double lambda0, double k, double target_arl,
                   const CalibrationOptions& opts = {});

/// Pointwise verification (on truncated supports) that Poisson(lambda_a) is
/// stochastically dominated by Poisson(lambda_b); true exactly when
/// lambda_a <= lambda_b.
bool dominance_check(double lambda_a, double lambda_b);

/// floor((lambda2 / lambda1) * n2) for transferring a monitoring sample to
/// a stratum with higher per-subject rate lambda1 > lambda2.
std::int64_t efficiency_pair_dynamic(std::int64_t n2, double lambda1, double lambda2);

}  // namespace sentinel
