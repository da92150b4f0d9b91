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

#include "sentinel/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "sentinel/errors.hpp"

namespace sentinel {
namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Stop a tail sum when the geometric bound on the remaining terms is
// negligible relative to the accumulated mass.
constexpr double kTailBreakRel = 1e-17;

// stirlerr(n) = lgamma(n+1) - (n ln n - n + 0.5 ln(2 pi n)).
// Table below 16, asymptotic series above; relative accuracy ~1e-15.
double stirlerr(double n) {
  static const std::array<double, 16> table = [] {
    std::array<double, 16> t{};
    t[0] = 0.0;
    for (int i = 1; i < 16; ++i) {
      double di = static_cast<double>(i);
      t[i] = std::lgamma(di + 1.0) - (di * std::log(di) - di + 0.5 * std::log(kTwoPi * di));
    }
    return t;
  }();
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (n < 16.0) {
    double r = std::round(n);
    if (std::abs(n - r) < 1e-9) return table[static_cast<int>(r)];
    return std::lgamma(n + 1.0) - (n * std::log(n) - n + 0.5 * std::log(kTwoPi * n));
  }
  const double n1 = 1.0 / n;
  const double n2 = n1 * n1;
  if (n > 500.0) return (S0 - S1 * n2) * n1;
  if (n > 80.0) return (S0 - (S1 - S2 * n2) * n2) * n1;
  if (n > 35.0) return (S0 - (S1 - (S2 - S3 * n2) * n2) * n2) * n1;
  return (S0 - (S1 - (S2 - (S3 - S4 * n2) * n2) * n2) * n2) * n1;
}

// Deviance term x log(x/np) + np - x, evaluated by series when x ~ np to
// avoid the cancellation in the direct formula.
double bd0(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    const double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    for (int j = 1;; ++j) {
      ej *= v * v;
      const double s1 = s + ej / (2.0 * j + 1.0);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

double binomial_log_pmf(std::int64_t n, double p, std::int64_t x) {
  if (x < 0 || x > n) return kNegInf;
  const double nd = static_cast<double>(n);
  const double xd = static_cast<double>(x);
  if (x == 0) return nd * std::log1p(-p);
  if (x == n) return nd * std::log(p);
  const double lc = stirlerr(nd) - stirlerr(xd) - stirlerr(nd - xd) -
                    bd0(xd, nd * p) - bd0(nd - xd, nd * (1.0 - p));
  return lc + 0.5 * std::log(nd / (kTwoPi * xd * (nd - xd)));
}

// For small n the coefficient is an exact integer, so the direct product is
// correctly rounded; dyadic probabilities then give exact masses and exact
// quantile ties (e.g. the 0.75 at Binomial(2, 1/2)).
double binomial_pmf_value(std::int64_t n, double p, std::int64_t x) {
  if (x < 0 || x > n) return 0.0;
  if (n <= 50) {
    const std::int64_t k = std::min(x, n - x);
    long double coeff = 1.0L;
    for (std::int64_t i = 1; i <= k; ++i) {
      coeff = coeff * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    }
    return static_cast<double>(coeff) * std::pow(p, static_cast<double>(x)) *
           std::pow(1.0 - p, static_cast<double>(n - x));
  }
  return std::exp(binomial_log_pmf(n, p, x));
}

double poisson_log_pmf(double mu, std::int64_t x) {
  if (x < 0) return kNegInf;
  if (x == 0) return -mu;
  const double xd = static_cast<double>(x);
  return -stirlerr(xd) - bd0(xd, mu) - 0.5 * std::log(kTwoPi * xd);
}

double negbin_log_pmf(double mu, double r, std::int64_t x) {
  if (x < 0) return kNegInf;
  if (std::isinf(r)) return poisson_log_pmf(mu, x);
  const double xd = static_cast<double>(x);
  if (x <= 200000) {
    // ln Gamma(x+r) - ln Gamma(r) expanded as a sum of log1p terms; stable
    // even when r is enormous and the lgamma difference would cancel.
    // Compensated summation keeps the drift below the last bit of the log.
    double s = 0.0, carry = 0.0;
    for (std::int64_t i = 0; i < x; ++i) {
      const double v = std::log1p((static_cast<double>(i) - mu) / (r + mu));
      const double y = v - carry;
      const double t = s + y;
      carry = (t - s) - y;
      s = t;
    }
    return s + xd * std::log(mu) - std::lgamma(xd + 1.0) - r * std::log1p(mu / r);
  }
  return std::lgamma(xd + r) - std::lgamma(r) - std::lgamma(xd + 1.0) +
         r * std::log(r) - (xd + r) * std::log(r + mu) + xd * std::log(mu);
}

// Sums pmf terms from an anchor toward a tail. `ratio(k)` gives
// t(next)/t(current) when moving away from the mode, so terms decrease and
// the geometric remainder bound applies once ratio < 1.
template <class Ratio>
double tail_sum(double anchor_term, std::int64_t anchor, std::int64_t last, std::int64_t dir,
                Ratio ratio) {
  if (anchor_term == 0.0) return 0.0;  // whole tail below the double range
  KahanSum acc;
  acc.add(anchor_term);
  double t = anchor_term;
  for (std::int64_t k = anchor; k != last; k += dir) {
    const double r = ratio(k);
    if (r < 0.9999 && t * r / (1.0 - r) < acc.value() * kTailBreakRel) break;
    t *= r;
    if (t == 0.0) break;
    acc.add(t);
  }
  return acc.value();
}

// Scaled variant for log-space tails: accumulates terms relative to the
// anchor so the result is anchor_log + log(relative sum).
template <class Ratio>
double tail_log_sum(double anchor_log, std::int64_t anchor, std::int64_t last, std::int64_t dir,
                    Ratio ratio) {
  if (anchor_log == kNegInf) return kNegInf;
  KahanSum acc;
  acc.add(1.0);
  double t = 1.0;
  for (std::int64_t k = anchor; k != last; k += dir) {
    const double r = ratio(k);
    if (r < 0.9999 && t * r / (1.0 - r) < acc.value() * kTailBreakRel) break;
    t *= r;
    if (t == 0.0) break;
    acc.add(t);
  }
  return anchor_log + std::log(acc.value());
}

// ---- binomial tails ----------------------------------------------------

double binomial_lower_ratio(std::int64_t n, double p, std::int64_t k) {
  // t(k-1)/t(k)
  return (static_cast<double>(k) * (1.0 - p)) / (static_cast<double>(n - k + 1) * p);
}

double binomial_upper_ratio(std::int64_t n, double p, std::int64_t k) {
  // t(k+1)/t(k)
  return (static_cast<double>(n - k) * p) / (static_cast<double>(k + 1) * (1.0 - p));
}

std::int64_t binomial_mode(std::int64_t n, double p) {
  auto m = static_cast<std::int64_t>(std::floor((static_cast<double>(n) + 1.0) * p));
  return std::clamp<std::int64_t>(m, 0, n);
}

// P(X <= x) summed upward-from-zero direction (anchored at x, moving down).
double binomial_lower_sum(std::int64_t n, double p, std::int64_t x) {
  if (n <= 50) {
    KahanSum acc;
    for (std::int64_t k = 0; k <= x; ++k) acc.add(binomial_pmf_value(n, p, k));
    return std::min(1.0, acc.value());
  }
  const double t0 = binomial_pmf_value(n, p, x);
  return tail_sum(t0, x, std::int64_t{0}, -1,
                  [n, p](std::int64_t k) { return binomial_lower_ratio(n, p, k); });
}

// P(X > x) anchored at x+1, moving up.
double binomial_upper_sum(std::int64_t n, double p, std::int64_t x) {
  if (n <= 50) {
    KahanSum acc;
    for (std::int64_t k = x + 1; k <= n; ++k) acc.add(binomial_pmf_value(n, p, k));
    return std::min(1.0, acc.value());
  }
  const double t0 = binomial_pmf_value(n, p, x + 1);
  return tail_sum(t0, x + 1, n, +1,
                  [n, p](std::int64_t k) { return binomial_upper_ratio(n, p, k); });
}

// ---- poisson tails -----------------------------------------------------

double poisson_lower_sum(double mu, std::int64_t x) {
  const double t0 = std::exp(poisson_log_pmf(mu, x));
  return tail_sum(t0, x, std::int64_t{0}, -1,
                  [mu](std::int64_t k) { return static_cast<double>(k) / mu; });
}

double poisson_upper_sum(double mu, std::int64_t x) {
  const double t0 = std::exp(poisson_log_pmf(mu, x + 1));
  return tail_sum(t0, x + 1, std::numeric_limits<std::int64_t>::max(), +1,
                  [mu](std::int64_t k) { return mu / static_cast<double>(k + 1); });
}

// ---- negative binomial tails -------------------------------------------

double negbin_upper_ratio(double mu, double r, std::int64_t k) {
  return ((static_cast<double>(k) + r) / static_cast<double>(k + 1)) * (mu / (r + mu));
}

double negbin_lower_ratio(double mu, double r, std::int64_t k) {
  return (static_cast<double>(k) / (static_cast<double>(k) - 1.0 + r)) * ((r + mu) / mu);
}

std::int64_t negbin_mode(double mu, double r) {
  if (r <= 1.0) return 0;
  const double m = mu * (r - 1.0) / r;
  return std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(m)));
}

double negbin_lower_sum(double mu, double r, std::int64_t x) {
  const double t0 = std::exp(negbin_log_pmf(mu, r, x));
  return tail_sum(t0, x, std::int64_t{0}, -1,
                  [mu, r](std::int64_t k) { return negbin_lower_ratio(mu, r, k); });
}

double negbin_upper_sum(double mu, double r, std::int64_t x) {
  const double t0 = std::exp(negbin_log_pmf(mu, r, x + 1));
  return tail_sum(t0, x + 1, std::numeric_limits<std::int64_t>::max(), +1,
                  [mu, r](std::int64_t k) { return negbin_upper_ratio(mu, r, k); });
}

std::int64_t floor_to_int(double x) {
  const double f = std::floor(x);
  if (f < -9.0e18 || f > 9.0e18) {
    throw InvalidParameter("evaluation point out of integer range: " + std::to_string(x));
  }
  return static_cast<std::int64_t>(f);
}

// Smallest integer x with reach(x) >= u, bracketing from a starting guess
// with doubling steps and then bisecting. `upper_clamp < 0` means the
// support is unbounded above.
template <class Cdf>
std::int64_t quantile_search(double u, double start_mean, std::int64_t upper_clamp, Cdf cdf_at) {
  std::int64_t hi = static_cast<std::int64_t>(std::floor(start_mean));
  if (hi < 0) hi = 0;
  if (upper_clamp >= 0) hi = std::min(hi, upper_clamp);

  std::int64_t lo;
  if (cdf_at(hi) >= u) {
    lo = hi;
    std::int64_t step = 1;
    while (lo >= 0 && cdf_at(lo) >= u) {
      hi = lo;
      lo -= step;
      step *= 2;
    }
    // lo < 0 (cdf 0) or cdf(lo) < u
  } else {
    lo = hi;
    std::int64_t step = 1;
    for (;;) {
      std::int64_t cand = lo + step;
      if (upper_clamp >= 0 && cand >= upper_clamp) {
        hi = upper_clamp;  // cdf there is exactly 1
        break;
      }
      if (cdf_at(cand) >= u) {
        hi = cand;
        break;
      }
      lo = cand;
      step *= 2;
    }
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (cdf_at(mid) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void check_u(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw InvalidParameter("quantile level must lie strictly inside (0,1), got " +
                           std::to_string(u));
  }
}

}  // namespace

void validate(const BinomialLaw& law) {
  if (law.n < 1) {
    throw InvalidParameter("binomial law: n must be >= 1, got " + std::to_string(law.n));
  }
  if (!(law.p > 0.0 && law.p < 1.0)) {
    throw InvalidParameter("binomial law: p must lie strictly inside (0,1), got " +
                           std::to_string(law.p));
  }
}

void validate(const PoissonLaw& law) {
  if (!(law.mu > 0.0) || !std::isfinite(law.mu)) {
    throw InvalidParameter("poisson law: mu must be a positive real, got " +
                           std::to_string(law.mu));
  }
}

void validate(const NegBinLaw& law) {
  if (!(law.mu > 0.0) || !std::isfinite(law.mu)) {
    throw InvalidParameter("negative binomial law: mu must be a positive real, got " +
                           std::to_string(law.mu));
  }
  if (!(law.dispersion > 0.0)) {
    throw InvalidParameter("negative binomial law: dispersion must be positive, got " +
                           std::to_string(law.dispersion));
  }
}

void validate(const DiscreteDist& dist) {
  std::visit([](const auto& law) { validate(law); }, dist);
}

double mean(const DiscreteDist& dist) {
  return std::visit(
      [](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, BinomialLaw>) {
          return static_cast<double>(law.n) * law.p;
        } else {
          return law.mu;
        }
      },
      dist);
}

double log_pmf(const BinomialLaw& law, std::int64_t x) {
  validate(law);
  return binomial_log_pmf(law.n, law.p, x);
}

double log_pmf(const PoissonLaw& law, std::int64_t x) {
  validate(law);
  return poisson_log_pmf(law.mu, x);
}

double log_pmf(const NegBinLaw& law, std::int64_t x) {
  validate(law);
  return negbin_log_pmf(law.mu, law.dispersion, x);
}

double log_pmf(const DiscreteDist& dist, std::int64_t x) {
  return std::visit([x](const auto& law) { return log_pmf(law, x); }, dist);
}

double pmf(const BinomialLaw& law, std::int64_t x) {
  validate(law);
  return binomial_pmf_value(law.n, law.p, x);
}
double pmf(const PoissonLaw& law, std::int64_t x) { return std::exp(log_pmf(law, x)); }
double pmf(const NegBinLaw& law, std::int64_t x) { return std::exp(log_pmf(law, x)); }
double pmf(const DiscreteDist& dist, std::int64_t x) {
  return std::visit([x](const auto& law) { return pmf(law, x); }, dist);
}

double cdf(const BinomialLaw& law, double x) {
  validate(law);
  if (x < 0.0) return 0.0;
  const std::int64_t xi = floor_to_int(x);
  if (xi >= law.n) return 1.0;
  if (xi <= binomial_mode(law.n, law.p)) return binomial_lower_sum(law.n, law.p, xi);
  return 1.0 - binomial_upper_sum(law.n, law.p, xi);
}

double sf(const BinomialLaw& law, double x) {
  validate(law);
  if (x < 0.0) return 1.0;
  const std::int64_t xi = floor_to_int(x);
  if (xi >= law.n) return 0.0;
  if (xi >= binomial_mode(law.n, law.p)) return binomial_upper_sum(law.n, law.p, xi);
  return 1.0 - binomial_lower_sum(law.n, law.p, xi);
}

double cdf(const PoissonLaw& law, double x) {
  validate(law);
  if (x < 0.0) return 0.0;
  const std::int64_t xi = floor_to_int(x);
  if (xi <= static_cast<std::int64_t>(std::floor(law.mu))) {
    return poisson_lower_sum(law.mu, xi);
  }
  return 1.0 - poisson_upper_sum(law.mu, xi);
}

double sf(const PoissonLaw& law, double x) {
  validate(law);
  if (x < 0.0) return 1.0;
  const std::int64_t xi = floor_to_int(x);
  if (xi >= static_cast<std::int64_t>(std::floor(law.mu))) {
    return poisson_upper_sum(law.mu, xi);
  }
  return 1.0 - poisson_lower_sum(law.mu, xi);
}

double cdf(const NegBinLaw& law, double x) {
  validate(law);
  if (std::isinf(law.dispersion)) return cdf(PoissonLaw{law.mu}, x);
  if (x < 0.0) return 0.0;
  const std::int64_t xi = floor_to_int(x);
  if (xi <= negbin_mode(law.mu, law.dispersion)) {
    return negbin_lower_sum(law.mu, law.dispersion, xi);
  }
  return 1.0 - negbin_upper_sum(law.mu, law.dispersion, xi);
}

double sf(const NegBinLaw& law, double x) {
  validate(law);
  if (std::isinf(law.dispersion)) return sf(PoissonLaw{law.mu}, x);
  if (x < 0.0) return 1.0;
  const std::int64_t xi = floor_to_int(x);
  if (xi >= negbin_mode(law.mu, law.dispersion)) {
    return negbin_upper_sum(law.mu, law.dispersion, xi);
  }
  return 1.0 - negbin_lower_sum(law.mu, law.dispersion, xi);
}

double cdf(const DiscreteDist& dist, double x) {
  return std::visit([x](const auto& law) { return cdf(law, x); }, dist);
}

double sf(const DiscreteDist& dist, double x) {
  return std::visit([x](const auto& law) { return sf(law, x); }, dist);
}

double log_cdf(const BinomialLaw& law, double x) {
  validate(law);
  if (x < 0.0) return kNegInf;
  const std::int64_t xi = floor_to_int(x);
  if (xi >= law.n) return 0.0;
  const double c = cdf(law, x);
  if (c > 1e-280) {
    // near 1 the complement carries the precision
    if (c > 0.999) return std::log1p(-sf(law, x));
    return std::log(c);
  }
  return tail_log_sum(binomial_log_pmf(law.n, law.p, xi), xi, std::int64_t{0}, -1,
                      [&law](std::int64_t k) { return binomial_lower_ratio(law.n, law.p, k); });
}

double log_sf(const BinomialLaw& law, double x) {
  validate(law);
  if (x < 0.0) return 0.0;
  const std::int64_t xi = floor_to_int(x);
  if (xi >= law.n) return kNegInf;
  const double s = sf(law, x);
  if (s > 1e-280) {
    if (s > 0.999) return std::log1p(-cdf(law, x));
    return std::log(s);
  }
  return tail_log_sum(binomial_log_pmf(law.n, law.p, xi + 1), xi + 1, law.n, +1,
                      [&law](std::int64_t k) { return binomial_upper_ratio(law.n, law.p, k); });
}

std::int64_t quantile(const BinomialLaw& law, double u) {
  validate(law);
  check_u(u);
  return quantile_search(u, static_cast<double>(law.n) * law.p, law.n,
                         [&law](std::int64_t k) { return cdf(law, static_cast<double>(k)); });
}

std::int64_t quantile(const PoissonLaw& law, double u) {
  validate(law);
  check_u(u);
  return quantile_search(u, law.mu, -1,
                         [&law](std::int64_t k) { return cdf(law, static_cast<double>(k)); });
}

std::int64_t quantile(const NegBinLaw& law, double u) {
  validate(law);
  check_u(u);
  if (std::isinf(law.dispersion)) return quantile(PoissonLaw{law.mu}, u);
  return quantile_search(u, law.mu, -1,
                         [&law](std::int64_t k) { return cdf(law, static_cast<double>(k)); });
}

std::int64_t quantile(const DiscreteDist& dist, double u) {
  return std::visit([u](const auto& law) { return quantile(law, u); }, dist);
}

double pmf_sup_bound(std::int64_t n, double p) {
  validate(BinomialLaw{n, p});
  const double e = std::exp(1.0);
  return std::sqrt(1.0 / (2.0 * e * static_cast<double>(n) * p * (1.0 - p)));
}

double FiniteSupport::dropped_mass() const {
  KahanSum acc;
  for (double v : probs) acc.add(v);
  return std::max(0.0, 1.0 - acc.value());
}

namespace {

// Fills [0, hi] anchored at the mode so tail values underflow gracefully
// instead of propagating from an underflowed start term.
template <class DownRatio, class UpRatio>
FiniteSupport fill_support(std::int64_t hi, std::int64_t mode, double mode_pmf,
                           DownRatio down, UpRatio up) {
  FiniteSupport out;
  out.offset = 0;
  out.probs.assign(static_cast<std::size_t>(hi) + 1, 0.0);
  mode = std::clamp<std::int64_t>(mode, 0, hi);
  out.probs[static_cast<std::size_t>(mode)] = mode_pmf;
  double t = out.probs[static_cast<std::size_t>(mode)];
  for (std::int64_t k = mode; k > 0; --k) {
    t *= down(k);
    out.probs[static_cast<std::size_t>(k - 1)] = t;
  }
  t = out.probs[static_cast<std::size_t>(mode)];
  for (std::int64_t k = mode; k < hi; ++k) {
    t *= up(k);
    out.probs[static_cast<std::size_t>(k + 1)] = t;
  }
  return out;
}

}  // namespace

FiniteSupport truncate(const DiscreteDist& dist, double tail_mass) {
  validate(dist);
  if (!(tail_mass > 0.0 && tail_mass < 1.0)) {
    throw InvalidParameter("truncation tail mass must lie inside (0,1)");
  }
  if (const auto* b = std::get_if<BinomialLaw>(&dist)) {
    return fill_support(
        b->n, binomial_mode(b->n, b->p),
        binomial_pmf_value(b->n, b->p, binomial_mode(b->n, b->p)),
        [b](std::int64_t k) { return binomial_lower_ratio(b->n, b->p, k); },
        [b](std::int64_t k) { return binomial_upper_ratio(b->n, b->p, k); });
  }
  // Unbounded supports: cut where the survival drops below tail_mass.
  std::int64_t hi = quantile(dist, 1.0 - tail_mass);
  while (sf(dist, static_cast<double>(hi)) >= tail_mass) ++hi;
  if (const auto* po = std::get_if<PoissonLaw>(&dist)) {
    const double mu = po->mu;
    const auto mode = static_cast<std::int64_t>(std::floor(mu));
    return fill_support(
        hi, mode, std::exp(poisson_log_pmf(mu, mode)),
        [mu](std::int64_t k) { return static_cast<double>(k) / mu; },
        [mu](std::int64_t k) { return mu / static_cast<double>(k + 1); });
  }
  const auto& nb = std::get<NegBinLaw>(dist);
  if (std::isinf(nb.dispersion)) {
    return truncate(DiscreteDist{PoissonLaw{nb.mu}}, tail_mass);
  }
  const double mu = nb.mu;
  const double r = nb.dispersion;
  const std::int64_t mode = negbin_mode(mu, r);
  return fill_support(
      hi, mode, std::exp(negbin_log_pmf(mu, r, mode)),
      [mu, r](std::int64_t k) { return negbin_lower_ratio(mu, r, k); },
      [mu, r](std::int64_t k) { return negbin_upper_ratio(mu, r, k); });
}

double total_variation(const FiniteSupport& a, const FiniteSupport& b) {
  constexpr double kMaxDropped = 1e-9;
  if (a.dropped_mass() > kMaxDropped || b.dropped_mass() > kMaxDropped) {
    throw SupportMismatch("truncated supports leave more than 1e-9 mass unaccounted");
  }
  const std::int64_t lo = std::min(a.offset, b.offset);
  const std::int64_t hi = std::max(a.offset + static_cast<std::int64_t>(a.probs.size()),
                                   b.offset + static_cast<std::int64_t>(b.probs.size()));
  auto at = [](const FiniteSupport& f, std::int64_t x) -> double {
    const std::int64_t i = x - f.offset;
    if (i < 0 || i >= static_cast<std::int64_t>(f.probs.size())) return 0.0;
    return f.probs[static_cast<std::size_t>(i)];
  };
  KahanSum acc;
  for (std::int64_t x = lo; x < hi; ++x) acc.add(std::abs(at(a, x) - at(b, x)));
  return std::clamp(0.5 * acc.value(), 0.0, 1.0);
}

}  // namespace sentinel
