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

#include "sentinel/outbreak_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sentinel/cusum.hpp"
#include "sentinel/distributions.hpp"
#include "sentinel/errors.hpp"
#include "sentinel/glr.hpp"
#include "sentinel/rng.hpp"

namespace sentinel {
namespace {

constexpr std::int64_t kMaxExactConvolution = 5000;

DelaySummary summarize(const std::vector<std::int64_t>& values, std::int64_t censored) {
  DelaySummary s;
  s.replications = static_cast<std::int64_t>(values.size());
  s.censored = censored;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (auto v : values) sum += static_cast<double>(v);
  s.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (auto v : values) {
      const double d = static_cast<double>(v) - s.mean;
      ss += d * d;
    }
    s.ci_halfwidth = 1.96 * std::sqrt(ss / (n - 1.0) / n);
  }
  return s;
}

}  // namespace

double SubpopSpec::mean_risk() const {
  if (baseline_risks.empty()) return 0.0;
  return std::accumulate(baseline_risks.begin(), baseline_risks.end(), 0.0) /
         static_cast<double>(baseline_risks.size());
}

SubpopSpec SubpopSpec::homogeneous(std::int64_t m, double rate, double nu) {
  SubpopSpec spec;
  spec.population_size = m;
  spec.baseline_risks.assign(static_cast<std::size_t>(m), rate);
  spec.outbreak_factor = nu;
  validate(spec);
  return spec;
}

SubpopSpec SubpopSpec::two_point(std::int64_t m, double rate, double spread, double nu) {
  if (spread < 0.0 || rate - spread < 0.0 || rate + spread >= 1.0) {
    throw InvalidParameter("two-point profile must keep risks inside [0,1)");
  }
  SubpopSpec spec;
  spec.population_size = m;
  spec.baseline_risks.resize(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    // Alternate so the population mean is exact for even m; the middle
    // subject of an odd population sits at the mean.
    double r = (i % 2 == 0) ? rate + spread : rate - spread;
    if (m % 2 == 1 && i == m - 1) r = rate;
    spec.baseline_risks[static_cast<std::size_t>(i)] = r;
  }
  spec.outbreak_factor = nu;
  validate(spec);
  return spec;
}

SubpopSpec SubpopSpec::beta_profile(std::int64_t m, double rate, double concentration, double nu,
                                    std::uint64_t seed) {
  if (!(rate > 0.0 && rate < 1.0) || !(concentration > 0.0)) {
    throw InvalidParameter("beta profile needs rate in (0,1) and positive concentration");
  }
  SubpopSpec spec;
  spec.population_size = m;
  spec.baseline_risks.resize(static_cast<std::size_t>(m));
  auto gen = make_engine(seed);
  // Beta(a, b) with a = rate * concentration via two gamma draws.
  std::gamma_distribution<double> ga(rate * concentration, 1.0);
  std::gamma_distribution<double> gb((1.0 - rate) * concentration, 1.0);
  for (auto& r : spec.baseline_risks) {
    const double x = ga(gen);
    const double y = gb(gen);
    r = x / (x + y);
  }
  // Rescale to hit the population mean exactly; draws keep risks in [0,1).
  const double mean = spec.mean_risk();
  if (mean > 0.0) {
    const double scale = rate / mean;
    for (auto& r : spec.baseline_risks) r = std::min(r * scale, 1.0 - 1e-12);
  }
  spec.outbreak_factor = nu;
  validate(spec);
  return spec;
}

void validate(const SubpopSpec& spec) {
  if (spec.population_size < 1) {
    throw InvalidParameter("subpopulation must contain at least one subject");
  }
  if (static_cast<std::int64_t>(spec.baseline_risks.size()) != spec.population_size) {
    throw InvalidParameter("risk vector size must equal the population size");
  }
  for (double r : spec.baseline_risks) {
    if (!(r >= 0.0 && r < 1.0)) {
      throw InvalidParameter("per-subject risks must lie in [0,1)");
    }
  }
  if (!(spec.outbreak_factor >= 1.0)) {
    throw InvalidParameter("outbreak factor must be >= 1");
  }
}

SampleHandle draw_sample(const SubpopSpec& spec, std::int64_t n, std::uint64_t seed) {
  validate(spec);
  if (n < 0 || n > spec.population_size) {
    throw InvalidParameter("sample size " + std::to_string(n) + " exceeds population size " +
                           std::to_string(spec.population_size));
  }
  std::vector<std::int64_t> all(static_cast<std::size_t>(spec.population_size));
  std::iota(all.begin(), all.end(), std::int64_t{0});
  auto gen = make_engine(seed);
  SampleHandle handle;
  handle.indices.reserve(static_cast<std::size_t>(n));
  std::sample(all.begin(), all.end(), std::back_inserter(handle.indices),
              static_cast<std::size_t>(n), gen);
  std::sort(handle.indices.begin(), handle.indices.end());
  return handle;
}

CaseStream simulate_stream(const SampleHandle& sample, const SubpopSpec& spec,
                           std::int64_t horizon, std::optional<std::int64_t> outbreak_start,
                           std::uint64_t seed) {
  validate(spec);
  if (horizon < 1) throw InvalidParameter("horizon must be >= 1");
  std::vector<double> risks;
  risks.reserve(sample.indices.size());
  for (std::int64_t idx : sample.indices) {
    if (idx < 0 || idx >= spec.population_size) {
      throw InvalidParameter("sample index outside the population");
    }
    risks.push_back(spec.baseline_risks[static_cast<std::size_t>(idx)]);
  }
  std::vector<double> elevated(risks.size());
  for (std::size_t i = 0; i < risks.size(); ++i) {
    elevated[i] = std::min(spec.outbreak_factor * risks[i], 1.0);
  }

  auto gen = make_engine(seed);
  CaseStream stream;
  stream.counts.resize(static_cast<std::size_t>(horizon));
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const bool outbreak = outbreak_start && t >= *outbreak_start;
    const auto& active = outbreak ? elevated : risks;
    std::int64_t count = 0;
    for (double w : active) {
      if (uniform01(gen) < w) ++count;
    }
    stream.counts[static_cast<std::size_t>(t - 1)] = count;
  }
  return stream;
}

LeCamGap lecam_gap(const SampleHandle& sample, const SubpopSpec& spec) {
  validate(spec);
  const std::int64_t n = sample.n();
  if (n < 1) throw InvalidParameter("lecam gap needs a nonempty sample");
  if (n > kMaxExactConvolution) {
    throw TooLargeForExact("exact convolution capped at " +
                           std::to_string(kMaxExactConvolution) + " subjects, got " +
                           std::to_string(n));
  }
  std::vector<long double> conv(static_cast<std::size_t>(n) + 1, 0.0L);
  conv[0] = 1.0L;
  long double rate_sum = 0.0L;
  double sum_sq = 0.0;
  std::size_t used = 0;
  for (std::int64_t idx : sample.indices) {
    if (idx < 0 || idx >= spec.population_size) {
      throw InvalidParameter("sample index outside the population");
    }
    const auto w = static_cast<long double>(spec.baseline_risks[static_cast<std::size_t>(idx)]);
    rate_sum += w;
    sum_sq += static_cast<double>(w * w);
    ++used;
    for (std::size_t x = used; x >= 1; --x) {
      conv[x] = conv[x] * (1.0L - w) + conv[x - 1] * w;
    }
    conv[0] *= (1.0L - w);
  }

  FiniteSupport bernoulli_sum;
  bernoulli_sum.offset = 0;
  bernoulli_sum.probs.assign(conv.begin(), conv.end());

  LeCamGap gap;
  gap.bound_sum_squares = sum_sq;
  if (rate_sum > 0.0L) {
    const auto sampled = truncate(PoissonLaw{static_cast<double>(rate_sum)});
    gap.tv_sample_rate = total_variation(bernoulli_sum, sampled);
  }
  const double population_rate = static_cast<double>(n) * spec.mean_risk();
  if (population_rate > 0.0) {
    const auto pop = truncate(PoissonLaw{population_rate});
    gap.tv_population_rate = total_variation(bernoulli_sum, pop);
  }
  return gap;
}

DelayExperimentReport detection_delay_experiment(const SubpopSpec& high_rate,
                                                 const SubpopSpec& low_rate, ChartKind chart,
                                                 const DelayExperimentDesign& design,
                                                 std::int64_t replications, std::uint64_t seed) {
  validate(high_rate);
  validate(low_rate);
  if (replications < 2) throw InvalidParameter("experiment needs at least 2 replications");
  const double lambda1 = high_rate.mean_risk();
  const double lambda2 = low_rate.mean_risk();
  if (!(lambda1 > lambda2)) {
    throw InvalidParameter("experiment requires the first stratum to carry the higher rate");
  }

  DelayExperimentReport rep;
  rep.n2 = design.n2;
  rep.n1 = efficiency_pair_dynamic(design.n2, lambda1, lambda2);

  // The chart is set on the larger in-control mean (the full sample from
  // the low-rate stratum) and shared; the reduced sample's in-control
  // counts are stochastically smaller, so the limit transfers
  // conservatively.
  const double mu2 = static_cast<double>(design.n2) * lambda2;
  GlrConfig glr_cfg;
  CusumConfig cusum_cfg;
  if (chart == ChartKind::kCusum) {
    const double k = reference_value(mu2, design.design_nu * mu2);
    const double h = calibrate_h(mu2, k, design.target_arl);
    cusum_cfg = CusumConfig::from_rates(mu2, design.design_nu * mu2, h);
    rep.chart_k = k;
    rep.chart_limit = h;
  } else {
    glr_cfg.baseline_mean = mu2;
    glr_cfg.dispersion = std::numeric_limits<double>::infinity();
    glr_cfg.max_window = design.glr_max_window;
    GlrCalibrationOptions cal;
    cal.seed = mix_seed(seed, 0xC0FFEE);
    glr_cfg.threshold = calibrate_glr_threshold(mu2, glr_cfg.dispersion, glr_cfg.max_window,
                                                design.target_arl, cal);
    rep.chart_limit = glr_cfg.threshold;
  }

  auto chart_run_length = [&](const CaseStream& stream) -> RunLength {
    if (chart == ChartKind::kCusum) {
      return run_length(cusum_cfg, stream.counts);
    }
    const GlrTrace trace = monitor(stream.counts, glr_cfg);
    if (trace.alarm_time) return RunLength{*trace.alarm_time, false};
    return RunLength{static_cast<std::int64_t>(stream.counts.size()), true};
  };

  std::vector<std::int64_t> rl1, rl2, d1, d2;
  std::int64_t cens_rl1 = 0, cens_rl2 = 0, cens_d1 = 0, cens_d2 = 0;
  for (std::int64_t r = 0; r < replications; ++r) {
    const SampleHandle s1 = draw_sample(high_rate, rep.n1, mix_seed(seed, 4 * r));
    const SampleHandle s2 = draw_sample(low_rate, design.n2, mix_seed(seed, 4 * r + 1));

    const CaseStream quiet1 =
        simulate_stream(s1, high_rate, design.in_control_cap, std::nullopt, mix_seed(seed, 4 * r + 2));
    const CaseStream quiet2 =
        simulate_stream(s2, low_rate, design.in_control_cap, std::nullopt, mix_seed(seed, 4 * r + 3));
    const RunLength q1 = chart_run_length(quiet1);
    const RunLength q2 = chart_run_length(quiet2);
    rl1.push_back(q1.t);
    rl2.push_back(q2.t);
    cens_rl1 += q1.censored ? 1 : 0;
    cens_rl2 += q2.censored ? 1 : 0;

    const CaseStream burst1 =
        simulate_stream(s1, high_rate, design.delay_cap, 1, mix_seed(seed ^ 0x5eedULL, 2 * r));
    const CaseStream burst2 =
        simulate_stream(s2, low_rate, design.delay_cap, 1, mix_seed(seed ^ 0x5eedULL, 2 * r + 1));
    const RunLength b1 = chart_run_length(burst1);
    const RunLength b2 = chart_run_length(burst2);
    d1.push_back(b1.t);
    d2.push_back(b2.t);
    cens_d1 += b1.censored ? 1 : 0;
    cens_d2 += b2.censored ? 1 : 0;
  }

  rep.in_control_1 = summarize(rl1, cens_rl1);
  rep.in_control_2 = summarize(rl2, cens_rl2);
  rep.delay_1 = summarize(d1, cens_d1);
  rep.delay_2 = summarize(d2, cens_d2);
  return rep;
}

}  // namespace sentinel
