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

// Relative sampling efficiency between exact binomial tests on two strata.
// Given a test on the low-prevalence stratum (p2, n2), a test on the
// high-prevalence stratum (p1 > p2) with only floor((p2/p1) n2) samples
// retains its power up to an explicit discreteness penalty, provided the
// significance level and the reference power clear concentration
// thresholds. This header exposes that bound plus the supporting
// comparison results as checkable calculators.

struct TheoremScenario {
  std::int64_t n2 = 0;
  double p1 = 0.0, p2 = 0.0;  // baseline prevalences, p1 > p2
  double q1 = 0.0, q2 = 0.0;  // outbreak prevalences
  double alpha = 0.05;
  // When set, q_j = nu * p_j is required to hold (within 1e-15 relative).
  std::optional<double> nu;
};

struct ConditionFlags {
  bool alpha_ok = false;  // alpha below its concentration threshold
  bool power_ok = false;  // reference power above its threshold
  double alpha_threshold = 0.0;
  double power_threshold = 0.0;
  double reference_power = 0.0;  // exact power of the (n2, p2, q2) test
  bool all() const { return alpha_ok && power_ok; }
};

/// Evaluates both admissibility conditions exactly.
ConditionFlags check_conditions(const TheoremScenario& s);

struct TheoremReport {
  TheoremScenario scenario;
  ConditionFlags conditions;
  std::int64_t n1_floor = 0;
  bool n1_integer = false;
  double lhs_power = 0.0;   // power of the reduced high-prevalence test
  double rhs_power = 0.0;   // power of the reference test
  double penalty = 0.0;     // discreteness allowance, zero when n1 is integral
  double slack = 0.0;       // lhs - (rhs - penalty)
  bool verdict = false;     // slack >= -1e-12
};

/// Verifies the efficiency inequality on a scenario whose preconditions
/// hold; throws PreconditionsUnmet listing the failed clauses otherwise.
TheoremReport verify_theorem(const TheoremScenario& s);

// Strict CDF crossing between Binomial(n, p) and Binomial(n/a, ap): the
// thinned-and-boosted law is strictly smaller on [ceil(np), n/a] and
// strictly larger on [0, floor(np-1)]. a = 1 is the equality boundary.
struct Lemma1Report {
  bool boundary_equal = false;  // a == 1: laws identical, equality verified
  std::int64_t upper_points = 0;
  std::int64_t lower_points = 0;
  double min_upper_gap = 0.0;  // min of F_{n/a,ap} - F_{n,p} on the upper range
  double min_lower_gap = 0.0;  // min of F_{n,p} - F_{n/a,ap} on the lower range
  bool holds = false;
};

Lemma1Report lemma1_check(std::int64_t n, double a, double p);

// One-step CDF drop bound: F_{n,p}(x) - F_{n+1,p}(x) <= sqrt(p/(2en(1-p))).
struct StepBoundReport {
  double bound = 0.0;
  double max_gap = 0.0;  // exhaustively scanned over x in [0, n]
  bool holds = false;
};

StepBoundReport lemma2_cdf_step_bound(std::int64_t n, double p);

// Quantile dominance under thinning, valid above an explicit u-threshold.
struct QuantileDominanceReport {
  bool applicable = false;  // false when u is below the threshold
  double u_threshold = 0.0;
  std::int64_t quantile_full = 0;
  std::int64_t quantile_thinned = 0;
  bool holds = false;
};

QuantileDominanceReport lemma2_quantile_dominance(std::int64_t n, double a, double p, double u);

// Quasi-median brackets: the quantile a concentration width below 1/2 sits
// at or below np - 1, and the one a width above 1/2 sits at or above np.
struct QuasiMedianReport {
  bool lower_applicable = false;
  bool lower_holds = false;
  double lower_level = 0.0;
  bool upper_applicable = false;
  bool upper_holds = false;
  double upper_level = 0.0;
};

QuasiMedianReport lemma2_quasimedian(std::int64_t n, double p);

struct ScenarioGridOptions {
  std::int64_t min_n2 = 200;
  std::int64_t max_n2 = 5000;
  double min_p2 = 0.02;
  double max_p2 = 0.30;
  double min_alpha = 0.005;
};

/// Draws scenarios satisfying every precondition (rejection sampling with
/// the exact power computation in the loop). Deterministic per seed.
std::vector<TheoremScenario> sample_valid_scenarios(std::size_t count, std::uint64_t seed,
                                                    const ScenarioGridOptions& opts = {});

}  // namespace sentinel
