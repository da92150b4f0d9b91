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

#include "sentinel/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sentinel/distributions.hpp"
#include "sentinel/errors.hpp"
#include "sentinel/exact_test.hpp"
#include "sentinel/rng.hpp"

namespace sentinel {
namespace {

const double kE = std::exp(1.0);
constexpr double kSlackTolerance = 1e-12;

void validate_scenario(const TheoremScenario& s) {
  if (s.n2 < 1) throw InvalidParameter("scenario: n2 must be >= 1");
  for (double v : {s.p1, s.p2, s.q1, s.q2}) {
    if (!(v > 0.0 && v < 1.0)) {
      throw InvalidParameter("scenario: prevalences must lie strictly inside (0,1)");
    }
  }
  if (!(s.alpha > 0.0 && s.alpha < 1.0)) {
    throw InvalidParameter("scenario: alpha must lie strictly inside (0,1)");
  }
  if (!(s.p1 >= s.p2)) throw InvalidParameter("scenario: requires p1 >= p2");
  if (s.q1 < s.p1 || s.q2 < s.p2) {
    throw InvalidParameter("scenario: outbreak prevalences must not fall below baselines");
  }
  if (s.nu) {
    if (!(*s.nu > 1.0)) throw InvalidParameter("scenario: nu must exceed 1");
    if (std::abs(s.q1 - *s.nu * s.p1) > 1e-15 * std::max(1.0, s.q1) ||
        std::abs(s.q2 - *s.nu * s.p2) > 1e-15 * std::max(1.0, s.q2)) {
      throw InvalidParameter("scenario: q_j must equal nu * p_j when nu is set");
    }
  }
}

// n/a snapped to an integer within 1e-9 relative; negative when not integral.
std::int64_t integral_quotient(std::int64_t n, double a) {
  const double q = static_cast<double>(n) / a;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, q)) return -1;
  return static_cast<std::int64_t>(r);
}

}  // namespace

ConditionFlags check_conditions(const TheoremScenario& s) {
  validate_scenario(s);
  const double n2 = static_cast<double>(s.n2);
  ConditionFlags f;
  f.alpha_threshold = 0.5 - std::sqrt(1.0 / (2.0 * kE * n2 * s.p2 * (1.0 - s.p2)));
  f.alpha_ok = s.alpha <= f.alpha_threshold;
  f.power_threshold = 0.5 + std::sqrt(2.0 / (kE * n2 * s.q2 * (1.0 - s.q2)));
  f.reference_power = power(make_plan(s.n2, s.p2, s.alpha), s.q2);
  f.power_ok = f.reference_power >= f.power_threshold;
  return f;
}

TheoremReport verify_theorem(const TheoremScenario& s) {
  TheoremReport rep;
  rep.scenario = s;
  rep.conditions = check_conditions(s);

  std::string failed;
  if (!rep.conditions.alpha_ok) failed += " alpha-above-threshold";
  if (!rep.conditions.power_ok) failed += " reference-power-below-threshold";
  if (!(s.q2 <= 0.5)) failed += " q2-above-half";
  if (s.q1 * s.p2 < s.q2 * s.p1 * (1.0 - 1e-12)) failed += " outbreak-ratio-below-baseline-ratio";
  if (!failed.empty()) {
    throw PreconditionsUnmet("scenario fails:" + failed);
  }

  // Equal baselines are the degenerate boundary: the transfer is the
  // identity and the comparison reduces to the same test on both sides.
  const SamplePair pair =
      s.p1 == s.p2 ? SamplePair{s.n2, true} : efficiency_pair(s.n2, s.p1, s.p2);
  rep.n1_floor = pair.n1;
  rep.n1_integer = pair.exact;

  rep.lhs_power = power(make_plan(rep.n1_floor, s.p1, s.alpha), s.q1);
  rep.rhs_power = rep.conditions.reference_power;
  rep.penalty =
      pair.exact ? 0.0
                 : std::sqrt(s.q1 / (2.0 * kE * static_cast<double>(rep.n1_floor) * (1.0 - s.q1)));
  rep.slack = rep.lhs_power - (rep.rhs_power - rep.penalty);
  rep.verdict = rep.slack >= -kSlackTolerance;
  return rep;
}

Lemma1Report lemma1_check(std::int64_t n, double a, double p) {
  if (n < 1) throw InvalidParameter("lemma1: n must be >= 1");
  if (!(a >= 1.0)) throw InvalidParameter("lemma1: a must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("lemma1: p must lie inside (0,1)");
  if (!(a * p < 1.0)) {
    throw InvalidParameter("lemma1: requires a*p < 1, got " + std::to_string(a * p));
  }
  const std::int64_t n_over_a = integral_quotient(n, a);
  if (n_over_a < 1) {
    throw InvalidParameter("lemma1: n/a must be a positive integer (n=" + std::to_string(n) +
                           ", a=" + std::to_string(a) + ")");
  }

  const BinomialLaw full{n, p};
  const BinomialLaw thinned{n_over_a, a * p};
  Lemma1Report rep;
  rep.min_upper_gap = std::numeric_limits<double>::infinity();
  rep.min_lower_gap = std::numeric_limits<double>::infinity();

  if (n_over_a == n) {
    // a == 1 boundary: identical laws, verify equality pointwise.
    rep.boundary_equal = true;
    bool equal = true;
    for (std::int64_t x = 0; x <= n; ++x) {
      equal = equal && cdf(full, static_cast<double>(x)) == cdf(thinned, static_cast<double>(x));
    }
    rep.holds = equal;
    rep.min_upper_gap = 0.0;
    rep.min_lower_gap = 0.0;
    return rep;
  }

  const double np = static_cast<double>(n) * p;
  bool ok = true;

  // Upper range [ceil(np), n/a]: F_{n,p} strictly below. Compare survivals;
  // near-zero ties are broken in log space.
  const auto upper_lo = static_cast<std::int64_t>(std::ceil(np));
  for (std::int64_t x = upper_lo; x <= n_over_a; ++x) {
    const double xd = static_cast<double>(x);
    const double s_full = sf(full, xd);
    const double s_thin = sf(thinned, xd);
    bool strict = s_full > s_thin;
    if (!strict && s_full == s_thin) {
      strict = log_sf(full, xd) > log_sf(thinned, xd);
    }
    ok = ok && strict;
    rep.min_upper_gap = std::min(rep.min_upper_gap, cdf(thinned, xd) - cdf(full, xd));
    ++rep.upper_points;
  }

  // Lower range [0, floor(np-1)]: F_{n,p} strictly above.
  const auto lower_hi = static_cast<std::int64_t>(std::floor(np - 1.0));
  for (std::int64_t x = 0; x <= lower_hi; ++x) {
    const double xd = static_cast<double>(x);
    const double c_full = cdf(full, xd);
    const double c_thin = cdf(thinned, xd);
    bool strict = c_full > c_thin;
    if (!strict && c_full == c_thin) {
      strict = log_cdf(full, xd) > log_cdf(thinned, xd);
    }
    ok = ok && strict;
    rep.min_lower_gap = std::min(rep.min_lower_gap, c_full - c_thin);
    ++rep.lower_points;
  }

  if (rep.upper_points == 0) rep.min_upper_gap = 0.0;
  if (rep.lower_points == 0) rep.min_lower_gap = 0.0;
  rep.holds = ok;
  return rep;
}

StepBoundReport lemma2_cdf_step_bound(std::int64_t n, double p) {
  if (n < 1) throw InvalidParameter("step bound: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("step bound: p must lie inside (0,1)");
  StepBoundReport rep;
  rep.bound = std::sqrt(p / (2.0 * kE * static_cast<double>(n) * (1.0 - p)));
  const BinomialLaw small{n, p};
  const BinomialLaw big{n + 1, p};
  rep.max_gap = 0.0;
  for (std::int64_t x = 0; x <= n; ++x) {
    rep.max_gap =
        std::max(rep.max_gap, cdf(small, static_cast<double>(x)) - cdf(big, static_cast<double>(x)));
  }
  rep.holds = rep.max_gap <= rep.bound + 1e-15;
  return rep;
}

QuantileDominanceReport lemma2_quantile_dominance(std::int64_t n, double a, double p, double u) {
  if (n < 1) throw InvalidParameter("quantile dominance: n must be >= 1");
  if (!(a >= 1.0)) throw InvalidParameter("quantile dominance: a must be >= 1");
  if (!(p > 0.0 && p < 1.0 && a * p < 1.0)) {
    throw InvalidParameter("quantile dominance: requires 0 < p and a*p < 1");
  }
  const std::int64_t n_over_a = integral_quotient(n, a);
  if (n_over_a < 1) {
    throw InvalidParameter("quantile dominance: n/a must be a positive integer");
  }
  QuantileDominanceReport rep;
  rep.u_threshold =
      0.5 + std::sqrt(1.0 / (2.0 * kE * static_cast<double>(n) * p * (1.0 - p)));
  if (!(u > 0.0 && u < 1.0) || u < rep.u_threshold) {
    rep.applicable = false;  // outside the validity range; skipped, reported
    return rep;
  }
  rep.applicable = true;
  rep.quantile_full = quantile(BinomialLaw{n, p}, u);
  rep.quantile_thinned = quantile(BinomialLaw{n_over_a, a * p}, u);
  rep.holds = rep.quantile_full >= rep.quantile_thinned;
  return rep;
}

QuasiMedianReport lemma2_quasimedian(std::int64_t n, double p) {
  if (n < 1) throw InvalidParameter("quasimedian: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("quasimedian: p must lie inside (0,1)");
  const double nd = static_cast<double>(n);
  const double np = nd * p;
  QuasiMedianReport rep;
  rep.lower_level = 0.5 - std::sqrt(2.0 / (kE * np * (1.0 - p)));
  rep.upper_level = 0.5 + std::sqrt(1.0 / (2.0 * kE * np * (1.0 - p)));
  const BinomialLaw law{n, p};
  if (rep.lower_level > 0.0 && rep.lower_level < 1.0) {
    rep.lower_applicable = true;
    rep.lower_holds =
        static_cast<double>(quantile(law, rep.lower_level)) <= np - 1.0 + 1e-9;
  }
  if (rep.upper_level > 0.0 && rep.upper_level < 1.0) {
    rep.upper_applicable = true;
    rep.upper_holds = static_cast<double>(quantile(law, rep.upper_level)) >= np - 1e-9;
  }
  return rep;
}

std::vector<TheoremScenario> sample_valid_scenarios(std::size_t count, std::uint64_t seed,
                                                    const ScenarioGridOptions& opts) {
  std::vector<TheoremScenario> out;
  out.reserve(count);
  auto gen = make_engine(seed);
  auto unif = [&gen](double lo, double hi) { return lo + (hi - lo) * uniform01(gen); };

  while (out.size() < count) {
    TheoremScenario s;
    s.n2 = opts.min_n2 +
           static_cast<std::int64_t>(uniform01(gen) *
                                     static_cast<double>(opts.max_n2 - opts.min_n2 + 1));
    s.p2 = unif(opts.min_p2, opts.max_p2);

    const double alpha_cap =
        0.5 - std::sqrt(1.0 / (2.0 * kE * static_cast<double>(s.n2) * s.p2 * (1.0 - s.p2)));
    if (alpha_cap <= opts.min_alpha) continue;
    s.alpha = unif(opts.min_alpha, std::min(alpha_cap, 0.25));

    // Outbreak factor: large enough for the reference power condition, kept
    // inside q2 <= 1/2 and q1 < 0.9.
    const double nu_cap = std::min(3.0, 0.5 / s.p2);
    if (nu_cap <= 1.05) continue;
    const double nu = unif(1.05, nu_cap);
    s.q2 = nu * s.p2;
    if (s.q2 > 0.5) continue;

    const double r_cap =
        std::min({4.0, 0.9 / (nu * s.p2), static_cast<double>(s.n2) / 20.0});
    if (r_cap <= 1.0) continue;
    const double r = unif(1.0, r_cap);
    s.p1 = r * s.p2;
    if (s.p1 >= 1.0) continue;

    if (uniform01(gen) < 0.5) {
      s.q1 = nu * s.p1;
      s.nu = nu;
    } else {
      // Strict inequality variant: q1 strictly above the proportional value.
      const double q1_lo = nu * s.p1;
      const double q1_hi = std::min(0.9, 1.25 * q1_lo);
      if (q1_hi <= q1_lo) continue;
      s.q1 = unif(q1_lo, q1_hi);
      s.nu = std::nullopt;
    }
    if (s.q1 >= 0.9) continue;

    const ConditionFlags flags = check_conditions(s);
    if (!flags.all()) continue;
    out.push_back(s);
  }
  return out;
}

}  // namespace sentinel
