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
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "burger/brownian.hpp"
#include "burger/stats.hpp"

namespace burger {
namespace {

using boost::math::quadrature::gauss_kronrod;
using std::numbers::pi;

TEST_SUITE("brownian") {

TEST_CASE("covariance spec") {
  const CovSpec s = CovSpec::FromP(0.3);
  CHECK(s.var == doctest::Approx(0.35));
  CHECK(s.cov == doctest::Approx(0.15));
  // V = alpha U + W reproduces Var V and Cov(U, V).
  CHECK(s.alpha * s.var == doctest::Approx(s.cov));
  CHECK(s.alpha * s.alpha * s.var + s.resid_var == doctest::Approx(s.var));
}

TEST_CASE("sampled Z(1) has the stated covariance") {
  for (double p : {0.1, 1.0 / 3.0}) {
    const CovSpec s = CovSpec::FromP(p);
    Engine e(StreamId{41, 0});
    Gaussian normal(e);
    PairMoments mom;
    for (int i = 0; i < 1'000'000; ++i) {
      const GridPath path = SampleBm(s, 1.0, 1.0, normal);
      mom.Add(path.u.back(), path.v.back());
    }
    CHECK(std::abs(mom.var_x() - (1 - p) / 2) < 4 * mom.var_x_se());
    CHECK(std::abs(mom.cov() - p / 2) < 4 * mom.cov_se());
  }
}

TEST_CASE("nearly independent coordinates as p -> 0") {
  const CovSpec s = CovSpec::FromP(1e-3);
  Engine e(StreamId{42, 0});
  Gaussian normal(e);
  PairMoments mom;
  for (int i = 0; i < 200'000; ++i) {
    const GridPath path = SampleBm(s, 1.0, 0.25, normal);
    mom.Add(path.u.back(), path.v.back());
  }
  CHECK(std::abs(mom.cov()) < 4 * mom.cov_se());
}

TEST_CASE("quadrant bridge: containment, pinned endpoint, open quadrant at T/2") {
  const CovSpec s = CovSpec::FromP(0.3);
  Engine e(StreamId{43, 0});
  Gaussian normal(e);
  BridgeOptions opts;
  opts.dt = 1e-2;
  for (int i = 0; i < 500; ++i) {
    const BridgeSample b = SampleQuadrantBridge(s, 0.0, 0.0, 0.8, 0.6, 1.0, opts, normal);
    REQUIRE(b.path.u.back() == 0.8);
    REQUIRE(b.path.v.back() == 0.6);
    for (std::size_t k = 0; k < b.path.size(); ++k) {
      REQUIRE(b.path.u[k] >= 0.0);
      REQUIRE(b.path.v[k] >= 0.0);
    }
    const std::size_t mid = b.path.size() / 2;
    CHECK(b.path.u[mid] > 0.0);
    CHECK(b.path.v[mid] > 0.0);
  }
}

TEST_CASE("bridge acceptance increases with the endpoint level") {
  const CovSpec s = CovSpec::FromP(0.3);
  BridgeOptions opts;
  opts.dt = 1e-2;
  std::vector<double> rates;
  for (double u : {0.5, 1.0, 2.0}) {
    Engine e(StreamId{44, 0});
    Gaussian normal(e);
    std::int64_t attempts = 0;
    std::int64_t accepted = 0;
    while (attempts < 10'000) {
      attempts += SampleQuadrantBridge(s, 0.1, 0.1, u, u, 1.0, opts, normal).attempts;
      ++accepted;
    }
    rates.push_back(static_cast<double>(accepted) / static_cast<double>(attempts));
  }
  CHECK(rates[0] < rates[1]);
  CHECK(rates[1] < rates[2]);
}

TEST_CASE("bridge budget") {
  const CovSpec s = CovSpec::FromP(0.3);
  Engine e(StreamId{45, 0});
  Gaussian normal(e);
  BridgeOptions opts;
  opts.max_attempts = 3;
  opts.dt = 1e-3;
  CHECK_THROWS_AS(SampleQuadrantBridge(s, 0.0, 0.0, 1e-3, 1e-3, 10.0, opts, normal),
                  AttemptsExhaustedError);
  CHECK_THROWS_AS(SampleQuadrantBridge(s, 0.0, 0.0, 0.0, 1.0, 1.0, opts, normal),
                  std::invalid_argument);
}

TEST_CASE("g constants at p = 1/3") {
  const GParams g = GParams::FromP(1.0 / 3.0);
  CHECK(g.a0 == doctest::Approx(std::sqrt(3.0) / pi).epsilon(1e-14));
  CHECK(g.a0 == doctest::Approx(0.5513).epsilon(1e-4));
  CHECK(g.a1 == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(g.a2 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g.a3 == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("g integrates to one") {
  for (double p : {0.1, 1.0 / 3.0, 0.45}) {
    const GParams g = GParams::FromP(p);
    // t = 1/y^2 turns the t^-3/2 tail into a Gaussian in y.
    auto outer = [&](double y) {
      if (y <= 0.0) return 0.0;
      const double t = 1.0 / (y * y);
      const double sd = std::sqrt(t / (2.0 * g.a2));
      auto inner = [&](double v) { return GDensity(t, v, g); };
      const double mass = gauss_kronrod<double, 61>::integrate(
          inner, -g.a3 - 14 * sd, -g.a3 + 14 * sd, 10, 1e-14);
      return mass * 2.0 / (y * y * y);
    };
    const double total =
        gauss_kronrod<double, 61>::integrate(outer, 0.0, 12.0 / std::sqrt(g.a1), 15, 1e-13);
    CHECK(std::abs(total - 1.0) < 1e-6);
    CHECK(std::abs(GTimeCdf(1e12, g) - 1.0) < 1e-5);
    CHECK(GJointCdf(50.0, 40.0, g) == doctest::Approx(GTimeCdf(50.0, g)).epsilon(1e-9));
  }
}

TEST_CASE("g mode and sup") {
  const GParams g = GParams::FromP(0.3);
  for (double t : {0.2, 1.0, 3.0}) {
    CHECK(GDensity(t, -g.a3, g) > GDensity(t, -g.a3 + 0.01, g));
    CHECK(GDensity(t, -g.a3, g) > GDensity(t, -g.a3 - 0.01, g));
  }
  double best = 0.0;
  for (int i = 1; i < 4000; ++i) best = std::max(best, GDensity(i * 1e-3, -g.a3, g));
  CHECK(GSup(g) == doctest::Approx(best).epsilon(1e-5));
  CHECK_THROWS_AS(GDensity(0.0, 0.0, g), std::domain_error);
}

TEST_CASE("last-exit density") {
  for (double t : {0.1, 0.5, 0.9}) {
    CHECK(LastExitDensity(0.0, t) == doctest::Approx(1.0 / (pi * std::sqrt(t * (1 - t)))));
    CHECK(LastExitDensity(1.3, t) == LastExitDensity(-1.3, t));
  }
  // The arcsine law has total mass one with the 1/pi norm.
  // t = sin^2(th) removes the endpoint singularities.
  auto f = [](double th) {
    const double s = std::sin(th), c = std::cos(th);
    return LastExitDensity(0.0, s * s) * 2.0 * s * c;
  };
  CHECK(gauss_kronrod<double, 61>::integrate(f, 0.0, pi / 2, 20, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(LastExitDensity(0.0, 1.0), std::domain_error);
}

TEST_CASE("last exit on a grid path") {
  const std::vector<double> x{0.0, 1.0, -1.0, 0.5, 2.0};
  const LastExit a = FindLastExit(x, 0.5, 0.0);
  CHECK(a.segment == 2);
  CHECK(a.t == doctest::Approx(0.5 * (2 + 2.0 / 3.0)));
  CHECK(FindLastExit(x, 0.5, 3.0).segment == -1);
  CHECK(FindLastExit({1.0, 2.0}, 1.0, 0.0).t == 0.0);
}

TEST_CASE("correlated last-exit density: Brownian scaling") {
  const auto c = CorrelatedLastExitParams::FromP(0.3);
  for (double T : {0.5, 2.0, 7.0}) {
    for (auto [u, v, r] : {std::tuple{0.4, 0.3, 0.2}, std::tuple{1.1, -0.5, 0.7}}) {
      const double s = std::sqrt(T);
      const double lhs = CorrelatedLastExitDensity(u, v, r * T, T, c);
      const double rhs =
          std::pow(T, -1.5) * CorrelatedLastExitDensity(u / s, v / s, r, 1.0, c);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("correlated last-exit density reduces to the one-dimensional shape") {
  // Integrating out v leaves norm * exp(-u^2 / (2 var t)) / sqrt(t (1 - t)),
  // the standard shape at u / sqrt(var).
  const double p = 1e-4;
  const CovSpec s = CovSpec::FromP(p);
  const auto c = CorrelatedLastExitParams::FromP(p);
  for (double u : {0.3, 1.0}) {
    for (double t : {0.2, 0.6}) {
      auto f = [&](double v) { return CorrelatedLastExitDensity(u, v, t, 1.0, c); };
      const double m = gauss_kronrod<double, 61>::integrate(f, -20.0, 20.0, 15, 1e-12);
      const double expect = kLastExitFittedNorm * LastExitShape(u / std::sqrt(s.var), t);
      CHECK(std::abs(m - expect) < 1e-3 * expect);
    }
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace burger
