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

#include "sentinel/cusum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <string>

#include "sentinel/distributions.hpp"
#include "sentinel/errors.hpp"
#include "sentinel/rng.hpp"

namespace sentinel {
namespace {

// Zero-start run length on a lattice of width at most h/m. The cell width
// is 1/unit, so one observed count moves the statistic by an exact integer
// number of cells, and the reference value is rounded onto the lattice.
// The chain dynamics are then exact; the only approximation is the
// k-rounding. Because a gridded control-limit calibration tends to park h
// just past a run-length discontinuity (where some integer count's
// excursion equals h exactly), the unit is chosen over a small window as
// the denominator best approximating k, keeping the perturbation far below
// typical edge distances. The resolution-doubling check in arl_markov
// guards whatever sensitivity remains.
double arl_lattice(const CusumConfig& cfg, double lambda, int m) {
  if (cfg.h == 0.0) {
    // Single state at zero: survive while d <= k.
    return 1.0 / sf(PoissonLaw{lambda}, cfg.k);
  }
  const auto base = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(static_cast<double>(m) / cfg.h)));
  std::int64_t unit = base;
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t u = base; u <= base + 48; ++u) {
    const double scaled = cfg.k * static_cast<double>(u);
    const double err = std::abs(scaled - std::round(scaled)) / static_cast<double>(u);
    if (err < best) {
      best = err;
      unit = u;
    }
    if (best * static_cast<double>(base) < 1e-6) break;
  }
  const auto shift = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::llround(cfg.k * static_cast<double>(unit))));
  const auto n_states =
      static_cast<std::int64_t>(std::floor(cfg.h * static_cast<double>(unit))) + 1;

  // Poisson masses up to the smallest count that alarms from state 0,
  // anchored at the mode so huge means cannot underflow the whole table.
  const std::int64_t d_max = (n_states + shift) / unit + 2;
  std::vector<double> fd(static_cast<std::size_t>(d_max) + 1, 0.0);
  {
    const auto mode = std::min<std::int64_t>(
        d_max, static_cast<std::int64_t>(std::floor(lambda)));
    fd[static_cast<std::size_t>(mode)] = pmf(PoissonLaw{lambda}, mode);
    for (std::int64_t d = mode; d > 0; --d) {
      fd[static_cast<std::size_t>(d - 1)] =
          fd[static_cast<std::size_t>(d)] * static_cast<double>(d) / lambda;
    }
    for (std::int64_t d = mode; d < d_max; ++d) {
      fd[static_cast<std::size_t>(d + 1)] =
          fd[static_cast<std::size_t>(d)] * lambda / static_cast<double>(d + 1);
    }
  }

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_states, n_states);
  for (std::int64_t i = 0; i < n_states; ++i) {
    for (std::int64_t d = 0; d <= d_max; ++d) {
      std::int64_t j = i + d * unit - shift;
      if (j < 0) j = 0;          // reflection at zero
      if (j >= n_states) break;  // this and every larger count alarms
      A(i, j) += fd[static_cast<std::size_t>(d)];
    }
  }
  // (I - Q) a = 1; zero-start answer is a[0].
  Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(n_states, n_states) - A;
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n_states);
  Eigen::VectorXd a = system.partialPivLu().solve(ones);
  return a(0);
}

}  // namespace

double reference_value(double lambda0, double lambda1) {
  if (!(lambda0 > 0.0) || !(lambda1 > lambda0)) {
    throw InvalidParameter("reference value requires 0 < lambda0 < lambda1");
  }
  return (lambda1 - lambda0) / (std::log(lambda1) - std::log(lambda0));
}

CusumConfig CusumConfig::from_rates(double lambda0, double lambda1, double h) {
  CusumConfig cfg;
  cfg.lambda0 = lambda0;
  cfg.lambda1 = lambda1;
  cfg.k = reference_value(lambda0, lambda1);
  cfg.h = h;
  validate(cfg);
  return cfg;
}

void validate(const CusumConfig& cfg) {
  if (!(cfg.lambda0 > 0.0) || !(cfg.lambda1 > cfg.lambda0)) {
    throw InvalidParameter("cusum config requires 0 < lambda0 < lambda1");
  }
  if (!(cfg.k > 0.0)) throw InvalidParameter("cusum config requires k > 0");
  if (cfg.h < 0.0) throw InvalidParameter("cusum config requires h >= 0");
}

CusumState cusum_step(CusumState state, std::int64_t d, const CusumConfig& cfg) {
  if (d < 0) throw InvalidParameter("observed count must be nonnegative");
  state.c = std::max(0.0, state.c + static_cast<double>(d) - cfg.k);
  state.t += 1;
  if (state.c > cfg.h) state.alarmed = true;
  return state;
}

RunLength run_length(const CusumConfig& cfg, std::span<const std::int64_t> counts) {
  validate(cfg);
  CusumState s;
  for (std::int64_t d : counts) {
    s = cusum_step(s, d, cfg);
    if (s.alarmed) return RunLength{s.t, false};
  }
  return RunLength{static_cast<std::int64_t>(counts.size()), true};
}

std::vector<CusumTracePoint> chart_trace(const CusumConfig& cfg,
                                         std::span<const std::int64_t> counts) {
  validate(cfg);
  std::vector<CusumTracePoint> trace;
  trace.reserve(counts.size());
  CusumState s;
  for (std::int64_t d : counts) {
    s = cusum_step(s, d, cfg);
    trace.push_back(CusumTracePoint{s.t, d, s.c, s.alarmed});
  }
  return trace;
}

void write_trace_csv(std::ostream& os, const std::vector<CusumTracePoint>& trace) {
  os << "t,d,c,alarmed\n";
  for (const auto& p : trace) {
    os << p.t << ',' << p.d << ',' << p.c << ',' << (p.alarmed ? 1 : 0) << '\n';
  }
}

ArlEstimate arl_markov(const CusumConfig& cfg, double lambda, const MarkovOptions& opts) {
  validate(cfg);
  if (!(lambda > 0.0)) throw InvalidParameter("arl requires lambda > 0");
  if (opts.states < 2) throw InvalidParameter("lattice needs at least 2 states");
  const double coarse = arl_lattice(cfg, lambda, opts.states);
  ArlEstimate est;
  est.method = ArlEstimate::Method::kMarkov;
  est.mean_run_length = coarse;
  if (opts.convergence_check && cfg.h > 0.0) {
    const double fine = arl_lattice(cfg, lambda, 2 * opts.states);
    if (std::abs(fine - coarse) > 0.005 * fine) {
      throw DiscretizationTooCoarse("run-length lattice did not converge: " +
                                    std::to_string(coarse) + " vs " + std::to_string(fine) +
                                    " at doubled resolution");
    }
    est.mean_run_length = fine;
  }
  return est;
}

ArlEstimate arl_monte_carlo(const CusumConfig& cfg, double lambda, const MonteCarloOptions& opts) {
  validate(cfg);
  if (!(lambda > 0.0)) throw InvalidParameter("arl requires lambda > 0");
  if (opts.replications < 1) throw InvalidParameter("need at least one replication");
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t censored = 0;
  for (std::int64_t rep = 0; rep < opts.replications; ++rep) {
    auto gen = make_engine(opts.seed, static_cast<std::uint64_t>(rep));
    std::poisson_distribution<std::int64_t> draw(lambda);
    CusumState s;
    std::int64_t t = opts.max_steps;
    bool hit = false;
    while (s.t < opts.max_steps) {
      s = cusum_step(s, draw(gen), cfg);
      if (s.alarmed) {
        t = s.t;
        hit = true;
        break;
      }
    }
    if (!hit) ++censored;
    sum += static_cast<double>(t);
    sum_sq += static_cast<double>(t) * static_cast<double>(t);
  }
  const double n = static_cast<double>(opts.replications);
  ArlEstimate est;
  est.method = ArlEstimate::Method::kMonteCarlo;
  est.mean_run_length = sum / n;
  est.replications = opts.replications;
  est.censored = censored;
  if (opts.replications > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    est.ci_halfwidth = 1.96 * std::sqrt(var / n);
  }
  return est;
}

double calibrate_h(double lambda0, double k, double target_arl, const CalibrationOptions& opts) {
  if (!(lambda0 > 0.0)) throw InvalidParameter("calibration requires lambda0 > 0");
  if (!(k > 0.0)) throw InvalidParameter("calibration requires k > 0");
  if (!(target_arl > 1.0)) {
    throw InvalidParameter("target run length must exceed 1, got " + std::to_string(target_arl));
  }
  CusumConfig cfg;
  cfg.lambda0 = lambda0;
  cfg.lambda1 = std::max(lambda0 + 1e-9, k * 1.0000001);  // only k and h matter for run length
  cfg.k = k;

  auto arl_at = [&](std::int64_t grid_index) {
    cfg.h = static_cast<double>(grid_index) * opts.grid_step;
    return arl_lattice(cfg, lambda0, opts.markov.states);
  };

  const auto max_index = static_cast<std::int64_t>(std::floor(opts.h_max / opts.grid_step));
  // Exponential bracket, then bisection on the grid; the run length is
  // monotone in h.
  std::int64_t lo = 0;
  std::int64_t hi = std::max<std::int64_t>(1, static_cast<std::int64_t>(1.0 / opts.grid_step));
  while (arl_at(hi) < target_arl) {
    lo = hi;
    hi *= 2;
    if (hi > max_index) {
      throw UnreachableTarget("control limit above " + std::to_string(opts.h_max) +
                              " still misses target run length " + std::to_string(target_arl));
    }
  }
  if (arl_at(lo) >= target_arl) {
    // Target may be met from the very bottom of the grid.
    while (lo > 0 && arl_at(lo - 1) >= target_arl) --lo;
    hi = lo;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (arl_at(mid) >= target_arl) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // Grid-level wobble guard: step forward if the bisection landed short.
  while (hi <= max_index && arl_at(hi) < target_arl) ++hi;
  if (hi > max_index) {
    throw UnreachableTarget("control limit search exhausted its grid");
  }
  return static_cast<double>(hi) * opts.grid_step;
}

bool dominance_check(double lambda_a, double lambda_b) {
  if (!(lambda_a > 0.0 && lambda_b > 0.0)) {
    throw InvalidParameter("dominance check requires positive rates");
  }
  const PoissonLaw a{lambda_a};
  const PoissonLaw b{lambda_b};
  const std::int64_t hi =
      std::max(quantile(a, 1.0 - 1e-12), quantile(b, 1.0 - 1e-12)) + 2;
  for (std::int64_t x = 0; x <= hi; ++x) {
    // A is dominated by B iff A's cdf never falls below B's.
    if (cdf(a, static_cast<double>(x)) < cdf(b, static_cast<double>(x))) return false;
  }
  return true;
}

std::int64_t efficiency_pair_dynamic(std::int64_t n2, double lambda1, double lambda2) {
  if (n2 < 1) throw InvalidParameter("n2 must be >= 1");
  if (!(lambda2 > 0.0) || !(lambda1 >= lambda2)) {
    throw InvalidParameter("dynamic pair requires lambda1 >= lambda2 > 0");
  }
  const double raw = (lambda2 / lambda1) * static_cast<double>(n2);
  const double nearest = std::round(raw);
  std::int64_t n1;
  if (std::abs(raw - nearest) <= 1e-9 * std::max(1.0, raw)) {
    n1 = static_cast<std::int64_t>(nearest);
  } else {
    n1 = static_cast<std::int64_t>(std::floor(raw));
  }
  if (n1 == 0) {
    throw InvalidParameter("transferred monitoring sample floors to zero");
  }
  return n1;
}

}  // namespace sentinel
