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
#include <variant>
#include <vector>

namespace sentinel {

// Exact evaluation of the discrete laws used throughout the library. All
// mass functions are evaluated in log space (saddle-point expansion of the
// factorials) and tail sums run from the nearer tail, so values stay inside
// [0,1] without overflow or underflow for counts up to at least 10^6. No
// normal approximations anywhere.

struct BinomialLaw {
  std::int64_t n = 1;  // trials, >= 1
  double p = 0.5;      // success probability, strictly inside (0,1)
};

struct PoissonLaw {
  double mu = 1.0;  // mean, > 0
};

// Mean/dispersion parametrisation: variance = mu + mu^2 / dispersion.
// dispersion = +infinity degenerates to PoissonLaw(mu).
struct NegBinLaw {
  double mu = 1.0;
  double dispersion = 1.0;  // > 0, may be +infinity
};

using DiscreteDist = std::variant<BinomialLaw, PoissonLaw, NegBinLaw>;

/// Throws InvalidParameter when a law violates its parameter ranges.
void validate(const BinomialLaw& law);
void validate(const PoissonLaw& law);
void validate(const NegBinLaw& law);
void validate(const DiscreteDist& dist);

double mean(const DiscreteDist& dist);

/// P(X = x); zero outside the support.
double pmf(const BinomialLaw& law, std::int64_t x);
double pmf(const PoissonLaw& law, std::int64_t x);
double pmf(const NegBinLaw& law, std::int64_t x);
double pmf(const DiscreteDist& dist, std::int64_t x);

/// log P(X = x); -infinity outside the support.
double log_pmf(const BinomialLaw& law, std::int64_t x);
double log_pmf(const PoissonLaw& law, std::int64_t x);
double log_pmf(const NegBinLaw& law, std::int64_t x);
double log_pmf(const DiscreteDist& dist, std::int64_t x);

/// P(X <= floor(x)). Accepts any real x.
double cdf(const BinomialLaw& law, double x);
double cdf(const PoissonLaw& law, double x);
double cdf(const NegBinLaw& law, double x);
double cdf(const DiscreteDist& dist, double x);

/// Survival P(X > floor(x)), computed from the upper tail directly so it
/// keeps full relative accuracy where 1 - cdf would cancel.
double sf(const BinomialLaw& law, double x);
double sf(const PoissonLaw& law, double x);
double sf(const NegBinLaw& law, double x);
double sf(const DiscreteDist& dist, double x);

/// log cdf / log survival; exact deep into either tail. Used where two
/// nearly equal tail probabilities must be compared strictly.
double log_cdf(const BinomialLaw& law, double x);
double log_sf(const BinomialLaw& law, double x);

/// Smallest integer x with cdf(x) >= u, for u in (0,1).
std::int64_t quantile(const BinomialLaw& law, double u);
std::int64_t quantile(const PoissonLaw& law, double u);
std::int64_t quantile(const NegBinLaw& law, double u);
std::int64_t quantile(const DiscreteDist& dist, double u);

/// sqrt(1 / (2 e n p (1-p))): an upper bound for max_x pmf(BinomialLaw{n,p}, x).
double pmf_sup_bound(std::int64_t n, double p);

/// A distribution restricted to a finite integer window [offset,
/// offset + probs.size()).
struct FiniteSupport {
  std::int64_t offset = 0;
  std::vector<double> probs;

  /// Probability mass outside the window (clamped at zero).
  double dropped_mass() const;
};

/// Truncates a law to a finite window whose complementary mass is below
/// tail_mass. Binomial laws keep their full support.
FiniteSupport truncate(const DiscreteDist& dist, double tail_mass = 1e-14);

/// Total variation distance (1/2) sum_x |a(x) - b(x)| over the union of the
/// two windows. Throws SupportMismatch when either input dropped more than
/// 1e-9 of its mass.
double total_variation(const FiniteSupport& a, const FiniteSupport& b);

}  // namespace sentinel
