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

#include <doctest.h>

#include <cmath>

#include "sentinel/distributions.hpp"
#include "sentinel/errors.hpp"
#include "sentinel/rng.hpp"

using namespace sentinel;

TEST_CASE("plan construction fixes the critical value and attained size") {
  const TestPlan plan = make_plan(10, 0.1, 0.05);
  CHECK(plan.critical_value == 3);
  CHECK(plan.attained_size == doctest::Approx(0.0128).epsilon(1e-2));
  CHECK(plan.attained_size <= 0.05);
  CHECK_FALSE(plan.degenerate);

  const TestPlan tiny = make_plan(1, 0.5, 0.6);
  CHECK(tiny.critical_value == 0);
  CHECK(tiny.attained_size == doctest::Approx(0.5).epsilon(1e-14));

  const TestPlan wide = make_plan(100, 0.01, 0.05);
  CHECK(wide.attained_size <= 0.05);

  // Tight alpha on a top-heavy null: the test can never reject.
  const TestPlan dead = make_plan(2, 0.9, 0.001);
  CHECK(dead.degenerate);
  CHECK(dead.critical_value == 2);
  CHECK(dead.attained_size == 0.0);
}

TEST_CASE("power at the null equals the attained size exactly") {
  const TestPlan plan = make_plan(10, 0.1, 0.05);
  CHECK(power(plan, 0.1) == plan.attained_size);
  CHECK(power(plan, 0.5) == doctest::Approx(0.828125).epsilon(1e-12));
  CHECK(power(plan, 1.0) == 1.0);

  const TestPlan dead = make_plan(2, 0.9, 0.001);
  CHECK(power(dead, 1.0) == 0.0);

  CHECK_THROWS_AS(power(plan, 0.05), InvalidParameter);
}

TEST_CASE("size control over a randomized grid") {
  auto gen = make_engine(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(uniform01(gen) * 9999);
    const double p0 = 0.002 + 0.498 * uniform01(gen);
    const double alpha = 0.002 + 0.498 * uniform01(gen);
    const TestPlan plan = make_plan(n, p0, alpha);
    CHECK(plan.attained_size <= alpha);
  }
}

TEST_CASE("power is monotone in the alternative") {
  auto gen = make_engine(33);
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(uniform01(gen) * 800);
    const double p0 = 0.01 + 0.3 * uniform01(gen);
    const TestPlan plan = make_plan(n, p0, 0.05);
    double prev = 0.0;
    for (double q = p0; q < 0.95; q += 0.05) {
      const double pw = power(plan, q);
      CHECK(pw >= prev - 1e-15);
      prev = pw;
    }
  }
}

TEST_CASE("power curve basics") {
  const auto single = power_curve(0.1, 0.5, 0.05, 17, 17);
  REQUIRE(single.size() == 1);
  CHECK(single[0].n == 17);
  CHECK(single[0].power == doctest::Approx(power(make_plan(17, 0.1, 0.05), 0.5)).epsilon(1e-12));

  // Degenerate ribbon: q = p0 reproduces the attained sizes.
  const auto ribbon = power_curve(0.2, 0.2, 0.1, 1, 40);
  for (const auto& pt : ribbon) {
    CHECK(pt.power == doctest::Approx(make_plan(pt.n, 0.2, 0.1).attained_size).epsilon(1e-11));
  }
}

TEST_CASE("incremental scan matches direct evaluation across resyncs") {
  const double p0 = 0.03, q = 0.05, alpha = 0.05;
  const auto curve = power_curve(p0, q, alpha, 1, 2100);
  for (std::int64_t n : {1, 2, 17, 511, 512, 513, 1024, 1500, 2048, 2100}) {
    const TestPlan plan = make_plan(n, p0, alpha);
    CHECK(curve[static_cast<std::size_t>(n - 1)].power ==
          doctest::Approx(power(plan, q)).epsilon(1e-9));
  }
}

TEST_CASE("the power curve is genuinely saw-toothed") {
  const auto curve = power_curve(0.01, 0.02, 0.05, 1, 2000);
  bool local_decrease = false;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].power < curve[i - 1].power - 1e-12) {
      local_decrease = true;
      break;
    }
  }
  CHECK(local_decrease);
}

TEST_CASE("first-hit sample size brackets the target") {
  const double p0 = 0.1, q = 0.5, alpha = 0.05, target = 0.8;
  const std::int64_t n = min_sample_size(p0, q, alpha, target, SampleSizeMode::kFirstHit);

  // Exhaustive scan as the oracle.
  std::int64_t expected = -1;
  for (std::int64_t m = 1; m <= 500; ++m) {
    if (power(make_plan(m, p0, alpha), q) >= target) {
      expected = m;
      break;
    }
  }
  CHECK(n == expected);
  CHECK(power(make_plan(n, p0, alpha), q) >= target);
  if (n > 1) CHECK(power(make_plan(n - 1, p0, alpha), q) < target);
}

TEST_CASE("a target below the attained size at n = 1 returns 1") {
  CHECK(min_sample_size(0.5, 0.6, 0.6, 0.4, SampleSizeMode::kFirstHit) == 1);
  // The same configuration dips at n = 2 (the critical value steps to 1 and
  // power drops to 0.36), so stable mode must land at 3: a hand-checkable
  // divergence between the two modes.
  CHECK(power(make_plan(2, 0.5, 0.6), 0.6) == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(power(make_plan(3, 0.5, 0.6), 0.6) == doctest::Approx(0.648).epsilon(1e-12));
  CHECK(min_sample_size(0.5, 0.6, 0.6, 0.4, SampleSizeMode::kStable) == 3);
}

TEST_CASE("stable mode never precedes first hit and clears every later dip") {
  const double p0 = 0.01, q = 0.02, alpha = 0.05, target = 0.9;
  const std::int64_t first = min_sample_size(p0, q, alpha, target, SampleSizeMode::kFirstHit);
  const std::int64_t stable = min_sample_size(p0, q, alpha, target, SampleSizeMode::kStable);
  CHECK(stable >= first);
  CHECK(power(make_plan(stable, p0, alpha), q) >= target);
  if (stable > first) {
    CHECK(power(make_plan(stable - 1, p0, alpha), q) < target);
  }
  // Spot-check the certified region immediately after the answer.
  for (std::int64_t n = stable; n < stable + 200; ++n) {
    CHECK(power(make_plan(n, p0, alpha), q) >= target);
  }
}

TEST_CASE("sample size search reports exhaustion") {
  SampleSizeOptions opts;
  opts.hard_cap = 100;
  CHECK_THROWS_AS(
      min_sample_size(0.01, 0.011, 0.05, 0.99, SampleSizeMode::kFirstHit, opts),
      SearchExhausted);
}

TEST_CASE("static efficiency pair") {
  const SamplePair half = efficiency_pair(1000, 0.02, 0.01);
  CHECK(half.n1 == 500);
  CHECK(half.exact);

  const SamplePair third = efficiency_pair(1000, 0.03, 0.01);
  CHECK(third.n1 == 333);
  CHECK_FALSE(third.exact);

  // (0.005 / 0.5) * 100 is exactly 1, so the transfer is integral.
  const SamplePair one = efficiency_pair(100, 0.5, 0.005);
  CHECK(one.n1 == 1);
  CHECK(one.exact);

  CHECK_THROWS_AS(efficiency_pair(10, 0.5, 0.01), InvalidParameter);  // floors to zero
  CHECK_THROWS_AS(efficiency_pair(100, 0.01, 0.02), InvalidParameter);  // p1 <= p2
}
