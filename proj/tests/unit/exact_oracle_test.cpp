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

#include "burger/exact_oracle.hpp"
#include "burger/reduced_state.hpp"
#include "burger/stopping_times.hpp"

namespace burger {
namespace {

TEST_SUITE("exact_oracle") {

TEST_CASE("stack keys round-trip") {
  const StackKey k = StackKey::FromBurgers(ParseWord("HCCH").symbols);
  CHECK(k.length == 4);
  CHECK(k.bits == 0b0110);
  CHECK(k.cheeseburgers() == 2);
  CHECK(StackKey::Decode(k.Encode()) == k);
  CHECK(FormatWord(k.ToBurgers()) == "HCCH");
  CHECK(StackKey{}.Encode() == 0);
}

TEST_CASE("one and two DP steps") {
  for (double p : {0.1, 0.3}) {
    DPTable t = DPTable::Initial(4);
    t = DpStep(t, p);
    CHECK(t.mass(StackKey::FromBurgers({Symbol::kBurgerH})) == 0.25);
    CHECK(t.mass(StackKey::FromBurgers({Symbol::kBurgerC})) == 0.25);
    CHECK(t.dead() == doctest::Approx(0.5));
    t = DpStep(t, p);
    CHECK(t.mass(StackKey{}) == doctest::Approx((1 + p) / 8).epsilon(1e-15));
  }
}

TEST_CASE("mass is conserved at every step") {
  DPTable t = DPTable::Initial(16);
  for (int i = 0; i < 16; ++i) {
    t = DpStep(t, 0.37);
    CHECK(std::abs(t.live() + t.dead() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(DpStep(t, 0.37), ResourceLimitError);
}

TEST_CASE("thread count does not change the table") {
  DPTable a = DPTable::Initial(14);
  DPTable b = DPTable::Initial(14);
  for (int i = 0; i < 14; ++i) {
    a = DpStep(a, 0.2, 1);
    b = DpStep(b, 0.2, 3);
  }
  CHECK(a.masses() == b.masses());
  CHECK(a.dead() == b.dead());
}

TEST_CASE("small-n closed forms") {
  for (double p : {0.1, 0.25, 1.0 / 3.0, 0.45}) {
    CHECK(ExactNoOrderTable(1, p).survival == doctest::Approx(0.5).epsilon(1e-15));
    const NoOrderTable t = ExactNoOrderTable(2, p);
    CHECK(t.survival == doctest::Approx((3 + p) / 8).epsilon(1e-15));
    CHECK(t.at(1, 1) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(ExactEmptyProb(2, p) == doctest::Approx((1 + p) / 8).epsilon(1e-15));
  }
  CHECK(ExactEmptyProb(2, 1.0 / 3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(ExactEmptyProb(1, 0.3), std::invalid_argument);
}

TEST_CASE("DP against brute force for n <= 6") {
  for (double p : {0.1, 0.45}) {
    for (int n = 1; n <= 6; ++n) {
      const NoOrderTable t = ExactNoOrderTable(n, p);
      const double bf = BruteForce(n, p, [](const Word& w) {
        return Reduce(w).has_order() ? 0.0 : 1.0;
      });
      CHECK(std::abs(bf - t.survival) < 1e-12);
      CHECK(std::abs(t.survival + t.dead - 1.0) < 1e-12);
      const auto law = BruteForceDistribution(n, p, [](const Word& w) -> std::int64_t {
        const ReducedState s = Reduce(w);
        if (s.has_order()) return -1;
        return static_cast<std::int64_t>(s.count(Symbol::kBurgerH)) * 100 +
               static_cast<std::int64_t>(s.count(Symbol::kBurgerC));
      });
      for (const auto& [code, prob] : law) {
        if (code < 0) continue;
        CHECK(std::abs(prob - t.at(code / 100, code % 100)) < 1e-12);
      }
      if (n % 2 == 0) {
        const double empty = BruteForce(n, p, [](const Word& w) {
          return Reduce(w).empty() ? 1.0 : 0.0;
        });
        CHECK(std::abs(empty - ExactEmptyProb(n, p)) < 1e-12);
      }
    }
  }
}

TEST_CASE("brute force functionals") {
  const double p = 0.3;
  CHECK(BruteForce(2, p, [](const Word& w) {
          SpanSource s(w.symbols);
          return FirstOrderTime(s, 2).truncated ? 1.0 : 0.0;
        }) == doctest::Approx((3 + p) / 8));
  CHECK(BruteForce(1, p, [](const Word& w) {
          return w.symbols[0] == Symbol::kBurgerH ? 1.0 : 0.0;
        }) == doctest::Approx(0.25));
  CHECK(BruteForce(2, p, [](const Word& w) { return Reduce(w).empty() ? 1.0 : 0.0; }) ==
        doctest::Approx((1 + p) / 8));
  CHECK_THROWS(BruteForce(kBruteForceLimit + 1, p, [](const Word&) { return 0.0; }));
}

TEST_CASE("H/C symmetry of the tables is exact") {
  const NoOrderTable t = ExactNoOrderTable(14, 0.27);
  for (const auto& [hc, prob] : t.prob) CHECK(prob == t.at(hc.second, hc.first));
}

TEST_CASE("empty-word table matches single evaluations") {
  const auto table = ExactEmptyProbTable(12, 0.2);
  REQUIRE(table.size() == 6);
  for (const auto& [two_n, prob] : table) CHECK(prob == doctest::Approx(ExactEmptyProb(two_n, 0.2)));
}

TEST_CASE("lossy table is close to the exact one") {
  const auto exact = ExactEmptyProbTable(16, 0.3);
  const LossyEmptyResult lossy = LossyEmptyProbTable(16, 0.3, 1e-14);
  REQUIRE(lossy.empty_prob.size() == exact.size());
  CHECK(lossy.approximate);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    CHECK(lossy.empty_prob[i].first == exact[i].first);
    CHECK(std::abs(lossy.empty_prob[i].second - exact[i].second) <= lossy.pruned + 1e-15);
  }
}

TEST_CASE("limits are enforced") {
  CHECK_THROWS_AS(ExactNoOrderTable(30, 0.3), ResourceLimitError);
  CHECK_THROWS_AS(ExactNoOrderTable(20, 0.3, 22, 1024), ResourceLimitError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace burger
