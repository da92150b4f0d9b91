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

#include "sentinel/glr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sentinel/errors.hpp"
#include "sentinel/rng.hpp"

namespace sentinel {
namespace {

// Log likelihood ratio of a window with total S over W days at the
// constrained maximum-likelihood elevated mean max(mu0, S/W). With the
// dispersion fixed, the gamma terms cancel and the maximizer is the window
// mean, so the inner supremum is closed-form.
double window_llr(double s, double w, double mu0, double dispersion) {
  const double mu_hat = s / w;
  if (mu_hat <= mu0) return 0.0;
  if (std::isinf(dispersion)) {
    return s * std::log(mu_hat / mu0) - w * (mu_hat - mu0);
  }
  const double r = dispersion;
  return w * r * std::log((r + mu0) / (r + mu_hat)) +
         s * std::log(mu_hat * (r + mu0) / (mu0 * (r + mu_hat)));
}

}  // namespace

void validate(const GlrConfig& cfg) {
  if (!(cfg.baseline_mean > 0.0)) {
    throw InvalidParameter("glr config requires a positive baseline mean");
  }
  if (!(cfg.dispersion > 0.0)) {
    throw InvalidParameter("glr config requires positive dispersion");
  }
  if (!(cfg.threshold > 0.0)) {
    throw InvalidParameter("glr config requires a positive threshold");
  }
  if (cfg.max_window < 1) {
    throw InvalidParameter("glr config requires max_window >= 1");
  }
}

BaselineFit estimate_baseline(std::span<const std::int64_t> counts) {
  if (counts.size() < 2) {
    throw InvalidParameter("baseline estimation needs at least 2 observations, got " +
                           std::to_string(counts.size()));
  }
  double sum = 0.0;
  for (std::int64_t c : counts) {
    if (c < 0) throw InvalidParameter("baseline counts must be nonnegative");
    sum += static_cast<double>(c);
  }
  const double n = static_cast<double>(counts.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (std::int64_t c : counts) {
    const double d = static_cast<double>(c) - mean;
    ss += d * d;
  }
  const double var = ss / (n - 1.0);
  BaselineFit fit;
  fit.mean = mean;
  fit.dispersion = var > mean ? mean * mean / (var - mean)
                              : std::numeric_limits<double>::infinity();
  return fit;
}

double glr_statistic(std::span<const std::int64_t> counts, const GlrConfig& cfg, std::int64_t t) {
  validate(cfg);
  if (t < 1 || t > static_cast<std::int64_t>(counts.size())) {
    throw InvalidParameter("glr statistic day out of range");
  }
  double best = 0.0;
  double s = 0.0;
  const std::int64_t first = std::max<std::int64_t>(1, t - cfg.max_window + 1);
  for (std::int64_t start = t; start >= first; --start) {
    const std::int64_t c = counts[static_cast<std::size_t>(start - 1)];
    if (c < 0) throw InvalidParameter("glr counts must be nonnegative");
    s += static_cast<double>(c);
    const double w = static_cast<double>(t - start + 1);
    best = std::max(best, window_llr(s, w, cfg.baseline_mean, cfg.dispersion));
  }
  return best;
}

GlrTrace monitor(std::span<const std::int64_t> counts, const GlrConfig& cfg) {
  validate(cfg);
  GlrTrace trace;
  trace.threshold = cfg.threshold;
  trace.statistic.reserve(counts.size());
  for (std::int64_t t = 1; t <= static_cast<std::int64_t>(counts.size()); ++t) {
    const double g = glr_statistic(counts, cfg, t);
    trace.statistic.push_back(g);
    if (!trace.alarm_time && g > cfg.threshold) trace.alarm_time = t;
  }
  return trace;
}

std::int64_t sample_negbin(double mu, double dispersion, std::mt19937_64& gen) {
  if (!(mu > 0.0) || !(dispersion > 0.0)) {
    throw InvalidParameter("negative binomial draw requires positive mu and dispersion");
  }
  if (std::isinf(dispersion)) {
    std::poisson_distribution<std::int64_t> pois(mu);
    return pois(gen);
  }
  std::gamma_distribution<double> mix(dispersion, mu / dispersion);
  const double rate = mix(gen);
  if (rate <= 0.0) return 0;
  std::poisson_distribution<std::int64_t> pois(rate);
  return pois(gen);
}

double calibrate_glr_threshold(double baseline_mean, double dispersion, std::int64_t max_window,
                               double target_arl, const GlrCalibrationOptions& opts) {
  if (!(baseline_mean > 0.0) || !(dispersion > 0.0)) {
    throw InvalidParameter("calibration requires positive baseline mean and dispersion");
  }
  if (max_window < 1) throw InvalidParameter("calibration requires max_window >= 1");
  if (!(target_arl > 1.0)) {
    throw InvalidParameter("target run length must exceed 1");
  }
  if (opts.replications < 1) throw InvalidParameter("need at least one replication");

  GlrConfig cfg;
  cfg.baseline_mean = baseline_mean;
  cfg.dispersion = dispersion;
  cfg.max_window = max_window;
  cfg.threshold = 1.0;  // not used below; statistic is threshold-free

  const auto horizon =
      static_cast<std::int64_t>(std::ceil(opts.arl_cap_factor * target_arl));

  // One simulation pass per replication; record the running-maximum
  // increments (value, day), so the run length at any threshold g is the
  // first record strictly above g.
  struct Record {
    double g;
    std::int64_t t;
  };
  std::vector<std::vector<Record>> records(static_cast<std::size_t>(opts.replications));
  std::vector<std::int64_t> counts(static_cast<std::size_t>(horizon));
  double max_seen = 0.0;
  for (std::int64_t rep = 0; rep < opts.replications; ++rep) {
    auto gen = make_engine(opts.seed, static_cast<std::uint64_t>(rep));
    for (auto& c : counts) c = sample_negbin(baseline_mean, dispersion, gen);
    double running = 0.0;
    auto& rec = records[static_cast<std::size_t>(rep)];
    for (std::int64_t t = 1; t <= horizon; ++t) {
      const double g = glr_statistic(counts, cfg, t);
      if (g > running) {
        rec.push_back(Record{g, t});
        running = g;
      }
    }
    max_seen = std::max(max_seen, running);
  }

  auto arl_at = [&](double g) {
    double sum = 0.0;
    for (const auto& rec : records) {
      std::int64_t t = horizon;  // censored at the cap
      // Records are increasing in g; find the first one above the threshold.
      auto it = std::upper_bound(rec.begin(), rec.end(), g,
                                 [](double v, const Record& r) { return v < r.g; });
      if (it != rec.end()) t = it->t;
      sum += static_cast<double>(t);
    }
    return sum / static_cast<double>(opts.replications);
  };

  const auto max_index =
      static_cast<std::int64_t>(std::ceil(max_seen / opts.grid_step)) + 1;
  std::int64_t lo = 0;
  std::int64_t hi = max_index;
  if (arl_at(static_cast<double>(hi) * opts.grid_step) < target_arl) {
    throw UnreachableTarget(
        "even a never-crossed threshold misses the target run length; "
        "increase arl_cap_factor or replications");
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (arl_at(static_cast<double>(mid) * opts.grid_step) >= target_arl) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return static_cast<double>(hi) * opts.grid_step;
}

}  // namespace sentinel
