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
#include <stdexcept>

#include "burger/rng.hpp"
#include "burger/stats.hpp"

namespace burger {
namespace {

TEST_SUITE("stats") {

TEST_CASE("proportions") {
  const Estimate e = Proportion(25, 100);
  CHECK(e.value == 0.25);
  CHECK(e.se == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
  CHECK(Proportion(0, 50).se == doctest::Approx(0.02));
  CHECK_THROWS_AS(Proportion(0, 0), std::invalid_argument);
  CHECK(SigmaDistance({1.0, 0.5}, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("pair moments: known small sample and merge") {
  PairMoments a;
  PairMoments b;
  const double xs[] = {1, 2, 3, 4};
  const double ys[] = {2, 1, 4, 3};
  for (int i = 0; i < 2; ++i) a.Add(xs[i], ys[i]);
  for (int i = 2; i < 4; ++i) b.Add(xs[i], ys[i]);
  a.Merge(b);
  CHECK(a.count() == 4);
  CHECK(a.mean_x() == doctest::Approx(2.5));
  CHECK(a.var_x() == doctest::Approx(5.0 / 3.0));
  CHECK(a.var_y() == doctest::Approx(5.0 / 3.0));
  CHECK(a.cov() == doctest::Approx(1.0));
}

TEST_CASE("KS statistics") {
  // Uniform sample at the midpoints i/n - 1/2n has D = 1/2n.
  std::vector<double> mid;
  for (int i = 0; i < 10; ++i) mid.push_back((i + 0.5) / 10.0);
  CHECK(KsOneSample(mid, [](double x) { return x; }) == doctest::Approx(0.05));
  CHECK(KsTwoSample({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(KsTwoSample({1, 2}, {3, 4}) == 1.0);
  CHECK(KsTwoSample({1, 2, 3, 4}, {2, 3}) == doctest::Approx(0.25));
  CHECK(KsCritical(100, 100) == doctest::Approx(1.358 * std::sqrt(0.02)));
  // Sub-distribution: half the draws censored, observed ones uniform on [0,1].
  CHECK(KsSubDistribution(mid, 20, [](double x) { return 0.5 * std::min(x, 1.0); }, 1.0) ==
        doctest::Approx(0.025));
}

TEST_CASE("weighted line fit is exact on a line") {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  const std::vector<double> w{1, 2, 3, 4};
  const LineFit f = WeightedLineFit(x, y, w);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK_THROWS_AS(WeightedLineFit(std::vector<double>{1}, std::vector<double>{1},
                                  std::vector<double>{1}),
                  std::invalid_argument);
}

TEST_CASE("correlation and quantiles") {
  const std::vector<double> a{1, 2, 3, 4};
  const std::vector<double> b{2, 4, 6, 8};
  const std::vector<double> c{4, 3, 2, 1};
  CHECK(PearsonCorrelation(a, b) == doctest::Approx(1.0));
  CHECK(PearsonCorrelation(a, c) == doctest::Approx(-1.0));
  CHECK(Quantile({3, 1, 2}, 0.5) == 2.0);
  CHECK(Quantile({0, 10}, 0.25) == 2.5);
}

}  // TEST_SUITE

}  // namespace
}  // namespace burger
