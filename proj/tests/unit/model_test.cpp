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
#include <set>
#include <stdexcept>

#include "burger/model.hpp"
#include "burger/rng.hpp"
#include "burger/stats.hpp"

namespace burger {
namespace {

TEST_SUITE("model") {

TEST_CASE("p = 1/3 anchors") {
  const ModelParams m = Exponents(1.0 / 3.0);
  CHECK(m.q == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.kappa == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(m.mu == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(m.mu_prime == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("arctan and kappa forms agree, exponents in range") {
  for (int i = 1; i <= 49; ++i) {
    const double p = 0.01 * i;
    const double kappa = KappaFromP(p);
    CHECK(kappa > 4.0);
    CHECK(kappa < 8.0);
    CHECK(std::abs(PFromKappa(kappa) - p) < 1e-10);
    CHECK(std::abs(MuFromP(p) - MuFromKappa(kappa)) < 1e-10);
    CHECK(std::abs(MuPrimeFromP(p) - MuPrimeFromKappa(kappa)) < 1e-10);
    const ModelParams m = Exponents(p);
    CHECK(m.mu > 0.5);
    CHECK(m.mu < 1.0);
    CHECK(m.mu_prime > 1.0 / 3.0);
    CHECK(m.mu_prime < 0.5);
    CHECK(m.q == doctest::Approx(4 * p * p / ((1 - p) * (1 - p))));
  }
}

TEST_CASE("p -> 1/2 limit") {
  const ModelParams m = Exponents(0.5 - 1e-9);
  CHECK(m.mu == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(m.mu_prime == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(m.mu > 0.5);
  CHECK(m.mu_prime < 0.5);
}

TEST_CASE("p outside (0, 1/2) is rejected") {
  CHECK_THROWS_AS(CheckP(0.0), std::domain_error);
  CHECK_THROWS_AS(CheckP(0.5), std::domain_error);
  CHECK_THROWS_AS(Exponents(-0.1), std::domain_error);
  CHECK_THROWS_AS(SymbolSampler(0.7, StreamId{1, 0}), std::domain_error);
}

TEST_CASE("symbol distribution") {
  const double p = 0.3;
  const SymbolDist d = SymbolDist::FromP(p);
  CHECK(d[Symbol::kBurgerH] == 0.25);
  CHECK(d[Symbol::kBurgerC] == 0.25);
  CHECK(d[Symbol::kOrderH] == doctest::Approx((1 - p) / 4));
  CHECK(d[Symbol::kOrderC] == doctest::Approx((1 - p) / 4));
  CHECK(d[Symbol::kOrderF] == doctest::Approx(p / 2));
}

TEST_CASE("sampler frequencies over 1e7 draws") {
  const double p = 1.0 / 3.0;
  SymbolSampler src(p, StreamId{2026, 0});
  constexpr std::uint64_t kDraws = 10'000'000;
  std::array<std::uint64_t, 5> counts{};
  for (std::uint64_t i = 0; i < kDraws; ++i) ++counts[Index(src.Next())];
  const SymbolDist d = SymbolDist::FromP(p);
  for (Symbol s : kAllSymbols) {
    const Estimate e = Proportion(counts[Index(s)], kDraws);
    CHECK(SigmaDistance(e, d[s]) < 4.0);
  }
}

}  // TEST_SUITE

TEST_SUITE("rng") {

TEST_CASE("identical stream ids give identical streams") {
  SymbolSampler a(0.2, StreamId{99, 7});
  SymbolSampler b(0.2, StreamId{99, 7});
  bool same = true;
  for (int i = 0; i < 1'000'000; ++i) same = same && a.Next() == b.Next();
  CHECK(same);
}

TEST_CASE("distinct stream indices differ in the first 1000 outputs") {
  Engine a(StreamId{5, 0});
  Engine b(StreamId{5, 1});
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += a() == b() ? 1 : 0;
  CHECK(equal == 0);
}

TEST_CASE("stream keys are collision free over many indices") {
  std::set<std::uint64_t> keys;
  for (const StreamId& id : SeedStreams(123, 100'000)) keys.insert(StreamKey(id));
  CHECK(keys.size() == 100'000);
  CHECK(SeedStreams(123, 3)[2] == StreamId{123, 2});
}

TEST_CASE("uniform draws stay in range") {
  Engine e(StreamId{1, 1});
  for (int i = 0; i < 100'000; ++i) {
    const double u = e.Uniform();
    const double v = e.UniformPositive();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK((v > 0.0 && v <= 1.0));
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace burger
