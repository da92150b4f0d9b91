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
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace sentinel {

// Windowed generalized-likelihood-ratio chart for overdispersed daily
// counts. The statistic at day t maximizes, over recent change points s and
// a one-sided elevated mean, the log likelihood ratio of negative binomial
// observations s..t against the baseline mean with the dispersion held
// fixed. Infinite dispersion gives the Poisson chart.

struct GlrConfig {
  double baseline_mean = 1.0;
  double dispersion = std::numeric_limits<double>::infinity();  // +inf => Poisson
  double threshold = 1.0;
  std::int64_t max_window = 52;  // change-point lookback cap, in days
};

void validate(const GlrConfig& cfg);

struct BaselineFit {
  double mean = 0.0;
  double dispersion = 0.0;  // +inf when the sample shows no overdispersion
};

/// Moment estimates from an in-control window: sample mean, and dispersion
/// from the excess of the sample variance over the mean (infinite when the
/// variance does not exceed the mean). Needs at least 2 observations.
BaselineFit estimate_baseline(std::span<const std::int64_t> counts);

/// GLR statistic at day t (1-based) given the first t entries of counts.
/// Nonnegative; exactly zero when every window mean is at or below baseline.
double glr_statistic(std::span<const std::int64_t> counts, const GlrConfig& cfg, std::int64_t t);

struct GlrTrace {
  std::vector<double> statistic;           // statistic[i] is day i+1
  std::optional<std::int64_t> alarm_time;  // first day the threshold is exceeded
  double threshold = 0.0;
};

/// Full statistic path and first alarm.
GlrTrace monitor(std::span<const std::int64_t> counts, const GlrConfig& cfg);

/// One negative-binomial draw via the gamma-Poisson mixture; infinite
/// dispersion falls back to a plain Poisson draw.
std::int64_t sample_negbin(double mu, double dispersion, std::mt19937_64& gen);

struct GlrCalibrationOptions {
  std::int64_t replications = 500;
  std::uint64_t seed = 1;
  double grid_step = 0.01;
  double arl_cap_factor = 10.0;  // simulate each path to cap_factor * target
};

/// Smallest threshold on the grid whose simulated in-control average run
/// length reaches target_arl under the fitted law. Censored paths enter at
/// the cap, which biases the estimate low and the threshold conservative.
double calibrate_glr_threshold(double baseline_mean, double dispersion, std::int64_t max_window,
                               double target_arl, const GlrCalibrationOptions& opts = {});

}  // namespace sentinel
