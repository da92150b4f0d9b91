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
#include <optional>
#include <vector>

namespace sentinel {

// Generative model for monitoring experiments: a subpopulation of subjects
// with individual daily disease probabilities, a fixed uniformly drawn
// sample observed over time, and a multiplicative outbreak that scales
// every risk from a given day onward. Daily counts are sums of independent
// per-subject Bernoulli draws; subjects can fall ill on many days.

struct SubpopSpec {
  std::int64_t population_size = 0;    // m
  std::vector<double> baseline_risks;  // per-subject daily probabilities, in [0,1)
  double outbreak_factor = 1.0;        // nu >= 1; risks scale to min(nu * risk, 1)

  double mean_risk() const;  // population average rate

  static SubpopSpec homogeneous(std::int64_t m, double rate, double nu = 1.0);
  /// Alternating rate±spread profile (exact population mean).
  static SubpopSpec two_point(std::int64_t m, double rate, double spread, double nu = 1.0);
  /// Beta-distributed risks rescaled to the exact population mean;
  /// concentration is the beta "sample size" parameter.
  static SubpopSpec beta_profile(std::int64_t m, double rate, double concentration, double nu,
                                 std::uint64_t seed);
};

void validate(const SubpopSpec& spec);

struct SampleHandle {
  std::vector<std::int64_t> indices;  // distinct, sorted subject indices
  std::int64_t n() const { return static_cast<std::int64_t>(indices.size()); }
};

/// Uniform without-replacement sample of n subjects; fixed for the whole
/// monitoring horizon. Deterministic per seed.
SampleHandle draw_sample(const SubpopSpec& spec, std::int64_t n, std::uint64_t seed);

struct CaseStream {
  std::vector<std::int64_t> counts;  // counts[t-1] is day t
};

/// Daily Bernoulli-sum counts over the sampled subjects; risks scale by the
/// outbreak factor from outbreak_start (1-based) onward.
CaseStream simulate_stream(const SampleHandle& sample, const SubpopSpec& spec,
                           std::int64_t horizon, std::optional<std::int64_t> outbreak_start,
                           std::uint64_t seed);

struct LeCamGap {
  double tv_sample_rate = 0.0;      // exact TV to Poisson(sum of sampled risks)
  double tv_population_rate = 0.0;  // TV to Poisson(n * population mean risk)
  double bound_sum_squares = 0.0;   // sum of squared sampled risks
};

/// Exact (convolution) total variation between the Bernoulli-sum law of a
/// day's count and its Poisson approximations. Throws TooLargeForExact for
/// samples above 5000 subjects.
LeCamGap lecam_gap(const SampleHandle& sample, const SubpopSpec& spec);

enum class ChartKind { kCusum, kGlr };

struct DelayExperimentDesign {
  std::int64_t n2 = 100;           // sample size on the low-rate stratum
  double design_nu = 1.5;          // out-of-control factor used to set the chart
  double target_arl = 370.0;       // in-control run-length target
  std::int64_t in_control_cap = 2000;
  std::int64_t delay_cap = 500;
  std::int64_t glr_max_window = 52;
};

struct DelaySummary {
  double mean = 0.0;
  double ci_halfwidth = 0.0;
  std::int64_t censored = 0;
  std::int64_t replications = 0;
};

struct DelayExperimentReport {
  std::int64_t n1 = 0, n2 = 0;
  double chart_k = 0.0;       // cusum reference value (0 for glr)
  double chart_limit = 0.0;   // shared h / threshold, set on the large sample
  DelaySummary in_control_1;  // run lengths with no outbreak, reduced sample
  DelaySummary in_control_2;
  DelaySummary delay_1;  // detection delays, outbreak from day 1
  DelaySummary delay_2;
};

/// Head-to-head monitoring comparison. The reduced sample size on the
/// high-rate stratum comes from the rate ratio; the chart limit is
/// calibrated once on the low-rate stratum's larger in-control mean and
/// shared, which is conservative for the reduced sample.
DelayExperimentReport detection_delay_experiment(const SubpopSpec& high_rate,
                                                 const SubpopSpec& low_rate, ChartKind chart,
                                                 const DelayExperimentDesign& design,
                                                 std::int64_t replications, std::uint64_t seed);

}  // namespace sentinel
