// Copyright 2026 The Burgerstack Authors.
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

#include <doctest.h>

#include <cmath>

#include "burger/estimators.hpp"
#include "burger/exact_oracle.hpp"
#include "burger/model.hpp"

namespace burger {
namespace {

TEST_SUITE("estimators") {

TEST_CASE("dyadic grid") {
  CHECK(DyadicGrid(2, 5) == std::vector<std::int64_t>{4, 8, 16, 32});
}

TEST_CASE("synthetic exponents are recovered within 0.03") {
  for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
    RunOptions run;
    run.seed = 7;
    const auto fits =
        FitTail(SyntheticTailEvent(DyadicGrid(1, 8), alpha), 0.3, 1'000'000, run, 1, 50);
    REQUIRE(fits.size() == 1);
    CHECK(std::abs(fits[0].exponent - alpha) < 0.03);
    CHECK(fits[0].ci_lo <= fits[0].exponent);
    CHECK(fits[0].ci_hi >= fits[0].exponent);
    for (const TailPoint& pt : fits[0].points) {
      const double expect = std::pow(static_cast<double>(pt.n), -alpha);
      CHECK(std::abs(pt.probability.value - expect) < 5 * pt.probability.se);
    }
  }
}

TEST_CASE("tail fits do not depend on the thread count") {
  auto run_with = [](int threads) {
    RunOptions run;
    run.seed = 3;
    run.threads = threads;
    run.batch_size = 4096;
    return FitTail(FirstOrderTailEvent(DyadicGrid(4, 8)), 1.0 / 3.0, 50'000, run, 1, 20);
  };
  const auto a = run_with(1);
  const auto b = run_with(4);
  REQUIRE(a.size() == b.size());
  CHECK(a[0].exponent == b[0].exponent);
  CHECK(a[0].ci_lo == b[0].ci_lo);
  for (std::size_t i = 0; i < a[0].points.size(); ++i) {
    CHECK(a[0].points[i].probability.value == b[0].points[i].probability.value);
  }
}

TEST_CASE("J event reports undecided samples beyond the horizon") {
  RunOptions run;
  const auto fits = FitTail(HamburgerTailEvent(DyadicGrid(2, 5), DyadicGrid(1, 3), 64), 0.3,
                            20'000, run, 1, 0);
  REQUIRE(fits.size() == 3);
  CHECK(fits[0].event == "J1>n");
  CHECK(fits[1].max_unknown_fraction > 0.0);
  CHECK(fits[1].exponent_unknown_as_miss >= fits[1].exponent_unknown_as_hit - 1e-12);
}

TEST_CASE("forward and literal renewal events agree in law") {
  RunOptions run;
  const auto fwd = FitTail(RenewalTailEvent(DyadicGrid(2, 6)), 0.3, 100'000, run, 1, 0);
  const auto lit = FitTail(RenewalTailEvent(DyadicGrid(2, 6), true), 0.3, 100'000, run, 2, 0);
  for (std::size_t i = 0; i < fwd[0].points.size(); ++i) {
    const Estimate& a = fwd[0].points[i].probability;
    const Estimate& b = lit[0].points[i].probability;
    CHECK(std::abs(a.value - b.value) < 4 * std::hypot(a.se, b.se));
  }
}

TEST_CASE("MC against exact at small n") {
  RunOptions run;
  run.seed = 11;
  const McVsExactReport r = McVsExact(0.3, 8, 2, 2, 200'000, run);
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) CHECK(row.sigma < 4.0);
}

TEST_CASE("empty-word experiment") {
  RunOptions run;
  const EmptyWordReport r = EmptyWordExperiment(1.0 / 3.0, 14, {6}, 100'000, run);
  REQUIRE(r.exact.size() == 7);
  CHECK(r.exact[0].second == doctest::Approx(1.0 / 6.0));
  CHECK(r.target_exponent == doctest::Approx(-2.5));
  CHECK(r.mc.size() == 1);
  CHECK(r.mc[0].sigma < 4.0);
}

TEST_CASE("conditioned endpoint law at small n") {
  RunOptions run;
  const EndpointLawReport r = ConditionedEndpointLaw(0.3, 6, 200'000, run);
  CHECK(r.accepted > 0);
  CHECK(r.max_sigma < 4.5);
  double total = 0.0;
  for (const EndpointCell& c : r.cells) total += c.exact;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("conditioned walks stay in the quadrant and the window") {
  ConditionedOptions o;
  o.n = 64;
  o.h = 8;
  o.c = 8;
  o.walk_samples = 200;
  o.bm_samples = 200;
  o.bm_dt = 1e-2;
  RunOptions run;
  const PathCompareReport r = ConditionedPathCompare(0.3, o, run);
  CHECK(r.all_walks_in_quadrant);
  CHECK(r.all_walks_in_window);
  CHECK(r.walk_samples == 200);
  CHECK(r.slices.size() == 3);
}

TEST_CASE("conditioned sampling gives up on an exhausted budget") {
  ConditionedOptions o;
  o.n = 256;
  o.h = 2;
  o.c = 2;
  o.window = 0;
  o.walk_samples = 100;
  o.max_attempts = 1000;
  RunOptions run;
  CHECK_THROWS_AS(ConditionedPathCompare(0.3, o, run), AttemptsExhaustedError);
}

TEST_CASE("flexible-order diagnostic") {
  const double p = 0.3;
  const double nu_small = MuPrimeFromP(p) / 2;
  RunOptions run;
  const FlexReport r =
      FlexibleOrderDiagnostic(p, DyadicGrid(6, 12), {0.9, nu_small}, 5000, run);
  CHECK(r.total_order_bound_holds);
  REQUIRE(r.points.size() == 7);
  CHECK(r.points.back().violation[0].value < r.points.front().violation[0].value);
  // Below mu' the bound fails more often as n grows; convergence to 1 is slow.
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    CHECK(r.points[i].violation[1].value > r.points[i - 1].violation[1].value);
  }
  CHECK(r.points.back().violation[1].value > 0.5);
}

TEST_CASE("first-passage check at a small scale") {
  RunOptions run;
  const FirstPassageReport r = FirstPassageCheck(0.3, 20'000, 1e-3, 5.0, run);
  CHECK(r.g_total_mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.ks_tau < 0.03);
  CHECK(r.ks_v < 0.03);
}

TEST_CASE("last-exit check at a small scale") {
  RunOptions run;
  const LastExitReport r = LastExitCheck({0.0, 1.0}, 20'000, 1e-3, 20, run);
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[0].shape_correlation > 0.95);
  CHECK(r.levels[0].positive_fraction.value == doctest::Approx(0.5).epsilon(0.05));
  CHECK(std::abs(r.levels[0].fitted_norm.value - kLastExitFittedNorm) <
        5 * r.levels[0].fitted_norm.se);
  CHECK_FALSE(r.conclusion.empty());
}

TEST_CASE("path covariance at a small scale") {
  RunOptions run;
  const CovarianceReport r = PathCovariance(0.3, 400, 20'000, 1'000'000, run);
  CHECK(r.expected_cov == doctest::Approx(0.15));
  CHECK(r.expected_var == doctest::Approx(0.35));
  CHECK(std::abs(r.var_u.value - r.expected_var) < 0.05);
  CHECK(std::abs(r.cov.value - r.expected_cov) < 0.05);
}

}  // TEST_SUITE

}  // namespace
}  // namespace burger
