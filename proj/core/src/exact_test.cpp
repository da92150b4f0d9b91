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

#include "sentinel/exact_test.hpp"

#include <cmath>
#include <string>

#include "sentinel/distributions.hpp"
#include "sentinel/errors.hpp"

namespace sentinel {
namespace {

constexpr int kResyncInterval = 512;
// Decisions closer to the target than this are re-made on exact values.
constexpr double kDecisionGuard = 1e-9;

void check_prob(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw InvalidParameter(std::string(name) + " must lie strictly inside (0,1), got " +
                           std::to_string(v));
  }
}

}  // namespace

TestPlan make_plan(std::int64_t n, double p0, double alpha) {
  if (n < 1) throw InvalidParameter("sample size must be >= 1, got " + std::to_string(n));
  check_prob(p0, "baseline prevalence");
  check_prob(alpha, "significance level");
  TestPlan plan;
  plan.n = n;
  plan.p0 = p0;
  plan.alpha = alpha;
  const BinomialLaw null_law{n, p0};
  plan.critical_value = quantile(null_law, 1.0 - alpha);
  plan.attained_size = sf(null_law, static_cast<double>(plan.critical_value));
  plan.degenerate = plan.critical_value == n;
  return plan;
}

double power(const TestPlan& plan, double q) {
  if (q < plan.p0) {
    throw InvalidParameter("alternative prevalence must be >= baseline, got q=" +
                           std::to_string(q) + " < p0=" + std::to_string(plan.p0));
  }
  if (q >= 1.0) {
    if (q > 1.0) throw InvalidParameter("alternative prevalence must be <= 1");
    return plan.degenerate ? 0.0 : 1.0;
  }
  return sf(BinomialLaw{plan.n, q}, static_cast<double>(plan.critical_value));
}

// ---- incremental scanner -------------------------------------------------

PowerScanner::PowerScanner(double p0, double q, double alpha, std::int64_t n_start)
    : p0_(p0), q_(q), alpha_(alpha), n_(n_start) {
  if (n_start < 1) throw InvalidParameter("scan must start at n >= 1");
  check_prob(p0, "baseline prevalence");
  check_prob(alpha, "significance level");
  if (q < p0 || q >= 1.0) {
    throw InvalidParameter("scanner requires p0 <= q < 1");
  }
  c_ = 0;
  resync();
}

void PowerScanner::resync() {
  const BinomialLaw null_law{n_, p0_};
  c_ = quantile(null_law, 1.0 - alpha_);
  cp_ = cdf(null_law, static_cast<double>(c_));
  fp_ = pmf(null_law, c_);
  const BinomialLaw alt_law{n_, q_};
  cq_ = cdf(alt_law, static_cast<double>(c_));
  fq_ = pmf(alt_law, c_);
  steps_since_resync_ = 0;
}

void PowerScanner::step_counts() {
  // F_{n+1}(c) = F_n(c) - p f_n(c); f_{n+1}(c) = f_n(c) (1-p) (n+1)/(n+1-c).
  const double np1 = static_cast<double>(n_ + 1);
  const double growth = np1 / static_cast<double>(n_ + 1 - c_);
  cp_ -= p0_ * fp_;
  fp_ *= (1.0 - p0_) * growth;
  cq_ -= q_ * fq_;
  fq_ *= (1.0 - q_) * growth;
  n_ += 1;
}

void PowerScanner::advance() {
  step_counts();
  // The null quantile is nondecreasing in n and steps by at most one; the
  // loop guards against rounding making two iterations necessary.
  while (cp_ < 1.0 - alpha_ && c_ < n_) {
    const double ratio_p =
        (static_cast<double>(n_ - c_) * p0_) / (static_cast<double>(c_ + 1) * (1.0 - p0_));
    const double ratio_q =
        (static_cast<double>(n_ - c_) * q_) / (static_cast<double>(c_ + 1) * (1.0 - q_));
    fp_ *= ratio_p;
    cp_ += fp_;
    fq_ *= ratio_q;
    cq_ += fq_;
    c_ += 1;
  }
  if (++steps_since_resync_ >= kResyncInterval) resync();
}

double PowerScanner::attained_size() const { return std::max(0.0, 1.0 - cp_); }

double PowerScanner::power() const { return std::min(1.0, std::max(0.0, 1.0 - cq_)); }

// ---------------------------------------------------------------------------

std::vector<PowerPoint> power_curve(double p0, double q, double alpha, std::int64_t n_lo,
                                    std::int64_t n_hi) {
  if (n_lo < 1 || n_hi < n_lo) {
    throw InvalidParameter("power curve needs 1 <= n_lo <= n_hi");
  }
  std::vector<PowerPoint> curve;
  curve.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  PowerScanner scan(p0, q, alpha, n_lo);
  for (;;) {
    curve.push_back(PowerPoint{scan.n(), q, scan.power()});
    if (scan.n() == n_hi) break;
    scan.advance();
  }
  return curve;
}

std::int64_t certified_power_horizon(double p0, double q, double alpha, double target_power) {
  check_prob(p0, "baseline prevalence");
  check_prob(alpha, "significance level");
  check_prob(target_power, "target power");
  if (!(q > p0 && q < 1.0)) {
    throw InvalidParameter("certified horizon requires p0 < q < 1");
  }
  // For n >= N: the null critical value is at most np0 + sqrt(n ln(1/a)/2)
  // and the alternative lower tail beyond it is at most
  // exp(-2 (sqrt(n)(q-p0) - sqrt(ln(1/a)/2))^2), which is increasing in n.
  const double b = std::sqrt(std::log(1.0 / alpha) / 2.0);
  const double g = std::sqrt(std::log(1.0 / (1.0 - target_power)) / 2.0);
  const double root = (g + b) / (q - p0);
  const double horizon = std::ceil(root * root) + 1.0;
  if (horizon >= 9.0e18) throw SearchExhausted("certified power horizon overflows");
  return static_cast<std::int64_t>(horizon);
}

std::int64_t min_sample_size(double p0, double q, double alpha, double target_power,
                             SampleSizeMode mode, const SampleSizeOptions& opts) {
  check_prob(target_power, "target power");
  if (!(q > p0)) {
    throw InvalidParameter("sample size search requires q > p0");
  }
  if (q >= 1.0) throw InvalidParameter("alternative prevalence must be < 1");

  // Power values this close to the target are re-read after an exact resync.
  auto reaches = [&](PowerScanner& scan) {
    double pw = scan.power();
    if (std::abs(pw - target_power) < kDecisionGuard) {
      scan.resync();
      pw = scan.power();
    }
    return pw >= target_power;
  };

  PowerScanner scan(p0, q, alpha, 1);
  std::int64_t first_hit = -1;
  while (scan.n() <= opts.hard_cap) {
    if (reaches(scan)) {
      first_hit = scan.n();
      break;
    }
    scan.advance();
  }
  if (first_hit < 0) {
    throw SearchExhausted("no sample size up to " + std::to_string(opts.hard_cap) +
                          " reaches power " + std::to_string(target_power));
  }
  if (mode == SampleSizeMode::kFirstHit) return first_hit;

  const std::int64_t horizon = certified_power_horizon(p0, q, alpha, target_power);
  if (horizon > opts.hard_cap) {
    throw SearchExhausted("stable certification horizon " + std::to_string(horizon) +
                          " exceeds the hard cap " + std::to_string(opts.hard_cap));
  }
  const std::int64_t scan_end =
      std::max(horizon, first_hit + opts.stable_window_factor * first_hit);
  std::int64_t last_below = -1;
  while (scan.n() < scan_end) {
    scan.advance();
    if (!reaches(scan)) last_below = scan.n();
  }
  return last_below < 0 ? first_hit : last_below + 1;
}

SamplePair efficiency_pair(std::int64_t n2, double p1, double p2) {
  if (n2 < 1) throw InvalidParameter("n2 must be >= 1");
  check_prob(p1, "p1");
  check_prob(p2, "p2");
  if (!(p1 > p2)) {
    throw InvalidParameter("efficiency pair requires p1 > p2");
  }
  const double raw = (p2 / p1) * static_cast<double>(n2);
  const double nearest = std::round(raw);
  SamplePair out;
  // Ratios of decimal prevalences rarely divide exactly in binary; snap
  // within 1e-9 relative so 0.01/0.03 * 300 counts as the integer it is.
  if (std::abs(raw - nearest) <= 1e-9 * std::max(1.0, raw)) {
    out.n1 = static_cast<std::int64_t>(nearest);
    out.exact = true;
  } else {
    out.n1 = static_cast<std::int64_t>(std::floor(raw));
    out.exact = false;
  }
  if (out.n1 == 0) {
    throw InvalidParameter("transferred sample size floors to zero (n2=" + std::to_string(n2) +
                           ", p2/p1=" + std::to_string(p2 / p1) + ")");
  }
  return out;
}

}  // namespace sentinel
