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

#include <functional>

#include "burger/path.hpp"
#include "burger/reduced_state.hpp"
#include "burger/stats.hpp"
#include "burger/stopping_times.hpp"
#include "test_util.hpp"

namespace burger {
namespace {

using testing::RandomWord;

// sum over all 5^k words of weight * f(word), by direct enumeration.
double Enumerate(int k, double p, const std::function<double(const std::vector<Symbol>&)>& f) {
  const SymbolDist dist = SymbolDist::FromP(p);
  std::vector<Symbol> w(static_cast<std::size_t>(k));
  double total = 0.0;
  std::int64_t count = 1;
  for (int i = 0; i < k; ++i) count *= 5;
  for (std::int64_t code = 0; code < count; ++code) {
    std::int64_t c = code;
    double weight = 1.0;
    for (int i = 0; i < k; ++i) {
      w[static_cast<std::size_t>(i)] = kAllSymbols[static_cast<std::size_t>(c % 5)];
      weight *= dist[w[static_cast<std::size_t>(i)]];
      c /= 5;
    }
    total += weight * f(w);
  }
  return total;
}

std::vector<Symbol> Syms(std::string_view text) { return ParseWord(text).symbols; }

TEST_SUITE("stopping_times") {

TEST_CASE("I examples") {
  const auto a = Syms("h");
  SpanSource s1(a);
  CHECK(FirstOrderTime(s1, 10).value == 1);
  const auto b = Syms("HCfh");
  SpanSource s2(b);
  const HorizonTime t = FirstOrderTime(s2, 4);
  CHECK(t.value == 5);
  CHECK(t.truncated);
}

TEST_CASE("P(I>1) and P(I>2) by enumeration") {
  for (double p : {0.1, 0.25, 1.0 / 3.0, 0.45}) {
    auto survives = [](int n) {
      return [n](const std::vector<Symbol>& w) {
        SpanSource s(w);
        return FirstOrderTime(s, n).truncated ? 1.0 : 0.0;
      };
    };
    CHECK(Enumerate(1, p, survives(1)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(Enumerate(2, p, survives(2)) == doctest::Approx((3 + p) / 8).epsilon(1e-14));
  }
}

TEST_CASE("P examples") {
  const auto a = Syms("H");
  SpanSource s1(a);
  CHECK(BackwardClearingTime(s1, 10).value == 1);
  // Stream order is X_{-1}, X_{-2}, ...
  const auto b = Syms("hH");
  SpanSource s2(b);
  CHECK(BackwardClearingTime(s2, 10).value == 2);
  const auto c = Syms("hhh");
  SpanSource s3(c);
  const HorizonTime t = BackwardClearingTime(s3, 3);
  CHECK(t.truncated);
  CHECK(t.value == 4);
}

TEST_CASE("J and L examples") {
  const auto a = Syms("H");
  SpanSource s1(a);
  const BackwardScan x = BackwardBurgerTimes(s1, 1, 10);
  REQUIRE(x.times.size() == 1);
  CHECK(x.times[0].j == 1);
  CHECK(x.times[0].l == 0);

  const auto b = Syms("cH");
  SpanSource s2(b);
  const BackwardScan y = BackwardBurgerTimes(s2, 1, 10);
  REQUIRE(y.times.size() == 1);
  CHECK(y.times[0].j == 2);
  CHECK(y.times[0].l == -1);

  const auto c = Syms("hhh");
  SpanSource s3(c);
  const BackwardScan z = BackwardBurgerTimes(s3, 1, 3);
  CHECK(z.exhausted);
  CHECK(z.times.empty());
}

TEST_CASE("P(J_1 = 2) by enumeration") {
  for (double p : {0.1, 1.0 / 3.0, 0.45}) {
    const double v = Enumerate(2, p, [](const std::vector<Symbol>& w) {
      SpanSource s(w);
      const BackwardScan scan = BackwardBurgerTimes(s, 1, 2);
      return !scan.times.empty() && scan.times[0].j == 2 ? 1.0 : 0.0;
    });
    CHECK(v == doctest::Approx((2 - p) / 16).epsilon(1e-14));
  }
  CHECK(Enumerate(1, 0.3, [](const std::vector<Symbol>& w) {
          return w[0] == Symbol::kBurgerH ? 1.0 : 0.0;
        }) == doctest::Approx(0.25));
}

TEST_CASE("cheeseburger version mirrors the hamburger one") {
  const auto a = Syms("hC");
  SpanSource s(a);
  const BackwardScan x = BackwardBurgerTimes(s, 1, 10, BurgerType::kCheeseburger);
  REQUIRE(x.times.size() == 1);
  CHECK(x.times[0].j == 2);
  CHECK(x.times[0].l == -1);
}

TEST_CASE("forward no-burger times") {
  const auto a = Syms("hH");
  SpanSource s1(a);
  CHECK(ForwardNoBurgerTimes(s1, 1, 10).times == std::vector<std::int64_t>{1});
  const auto b = Syms("HfH");
  SpanSource s2(b);
  CHECK(ForwardNoBurgerTimes(s2, 1, 10).times == std::vector<std::int64_t>{2});
  const auto c = Syms("HHH");
  SpanSource s3(c);
  CHECK(ForwardNoBurgerTimes(s3, 1, 3).exhausted);
}

TEST_CASE("renewal event: literal backward read") {
  const auto a = Syms("cCH");
  SpanSource s1(a);
  CHECK(HamburgerAddedAt(s1, 3));
  const auto b = Syms("hfH");
  SpanSource s2(b);
  CHECK_FALSE(HamburgerAddedAt(s2, 3));
}

TEST_CASE("last crossing examples") {
  const DiscretePath path(ResolveFlexInWindow(ParseWord("HHfH")));
  const LastCrossing k = ComputeLastCrossing(path, 4, 1);
  CHECK(k.k == 3);
  CHECK(k.q == 0);
  CHECK(ComputeLastCrossing(path, 4, 2).k == 0);
  CHECK_THROWS_AS(ComputeLastCrossing(DiscretePath(ParseWord("h")), 1, 1), std::invalid_argument);
}

// K by its definition: the largest i in [1, n-1] with N_H(X(1,i)) = m and
// X_{i+1} a hamburger not consumed by time n.
std::int64_t KByDefinition(const Word& w, std::int64_t n, std::int64_t m) {
  const MatchRecord match = MatchFunction(w);
  ReducedState s(1);
  std::int64_t k = 0;
  for (std::int64_t i = 1; i < n; ++i) {
    s.Append(w.at(i));
    if (static_cast<std::int64_t>(s.count(Symbol::kBurgerH)) == m &&
        w.at(i + 1) == Symbol::kBurgerH && !match.matched(i + 1)) {
      k = i;
    }
  }
  return k;
}

std::int64_t CountC(const Word& w, std::int64_t hi) {
  Word prefix;
  prefix.symbols.assign(w.symbols.begin(), w.symbols.begin() + hi);
  return static_cast<std::int64_t>(Reduce(prefix).count(Symbol::kBurgerC));
}

Word SurvivingWord(SymbolSampler& src, std::int64_t n) {
  for (;;) {
    const Word w = RandomWord(src, static_cast<std::size_t>(n));
    if (!Reduce(w).has_order()) return w;
  }
}

TEST_CASE("K by definition equals the path description on I > n") {
  SymbolSampler src(1.0 / 3.0, StreamId{31, 0});
  constexpr std::int64_t n = 24;
  for (int iter = 0; iter < 10'000; ++iter) {
    const Word w = SurvivingWord(src, n);
    const DiscretePath path(ResolveFlexInWindow(w));
    for (std::int64_t m = 1; m <= path.d(n) + 1; ++m) {
      const LastCrossing lc = ComputeLastCrossing(path, n, m);
      REQUIRE(lc.k == KByDefinition(w, n, m));
      if (lc.k > 0) REQUIRE(lc.q == CountC(w, lc.k));
    }
  }
}

TEST_CASE("reading back from n") {
  const BackwardScan a = BackwardFromN(ParseWord("hcH"), 1);
  REQUIRE(a.times.size() == 1);
  CHECK(a.times[0].j == 1);
  CHECK(a.times[0].l == 0);
  CHECK(BackwardFromN(ParseWord("hh"), 1).exhausted);
}

TEST_CASE("(J_{n,1}, L_{n,1}) has the law of (J_1, L_1)") {
  constexpr std::int64_t n = 256;
  constexpr int kSamples = 100'000;
  SymbolSampler a(1.0 / 3.0, StreamId{32, 0});
  SymbolSampler b(1.0 / 3.0, StreamId{32, 1});
  std::vector<double> j_n, l_n, j_1, l_1;
  for (int i = 0; i < kSamples; ++i) {
    const BackwardScan x = BackwardFromN(RandomWord(a, n), 1);
    j_n.push_back(x.times.empty() ? n + 1.0 : static_cast<double>(x.times[0].j));
    l_n.push_back(x.times.empty() ? 1e9 : static_cast<double>(x.times[0].l));
    const BackwardScan y = BackwardBurgerTimes(b, 1, n);
    j_1.push_back(y.times.empty() ? n + 1.0 : static_cast<double>(y.times[0].j));
    l_1.push_back(y.times.empty() ? 1e9 : static_cast<double>(y.times[0].l));
  }
  CHECK(KsTwoSample(j_n, j_1) <= 0.01);
  CHECK(KsTwoSample(l_n, l_1) <= 0.01);
}

// Right-hand side of the decomposition of E_n^{h,c} at level m, with J
// counting symbols read back from n.
bool DecomposedEvent(const Word& w, std::int64_t n, std::int64_t h, std::int64_t c,
                     std::int64_t m) {
  SpanSource fwd(w.symbols);
  const std::int64_t first_order = FirstOrderTime(fwd, n).value;
  const std::int64_t k = KByDefinition(w, n, m);
  if (!(k > 0 && k < first_order)) return false;
  const BackwardScan scan = BackwardFromN(w, h - m);
  if (static_cast<std::int64_t>(scan.times.size()) < h - m) return false;
  const BurgerAddTime& t = scan.times.back();
  const std::int64_t q = CountC(w, k);
  if (t.j != n - k || t.l != c - q) return false;
  Word tail;
  tail.symbols.assign(w.symbols.end() - t.j, w.symbols.end());
  return static_cast<std::int64_t>(Reduce(tail).count(Symbol::kOrderC)) <= q;
}

TEST_CASE("no-order event decomposes at the last crossing, pathwise") {
  SymbolSampler src(1.0 / 3.0, StreamId{33, 0});
  constexpr std::int64_t n = 16;
  int positives = 0;
  for (int iter = 0; iter < 10'000; ++iter) {
    // Half the words are conditioned on I > n so both sides get exercised.
    const Word w = iter % 2 ? SurvivingWord(src, n) : RandomWord(src, n);
    const ReducedState r = Reduce(w);
    const auto h0 = static_cast<std::int64_t>(r.count(Symbol::kBurgerH));
    const auto c0 = static_cast<std::int64_t>(r.count(Symbol::kBurgerC));
    for (std::int64_t h : {h0, h0 + 1}) {
      for (std::int64_t c : {c0, c0 + 1}) {
        for (std::int64_t m = 1; m < h; ++m) {
          const bool lhs = NoOrderEvent(w, n, h, c);
          REQUIRE(lhs == DecomposedEvent(w, n, h, c, m));
          positives += lhs ? 1 : 0;
        }
      }
    }
  }
  CHECK(positives > 1000);
}

TEST_CASE("no-order event") {
  CHECK(NoOrderEvent(ParseWord("HC"), 2, 1, 1));
  CHECK_FALSE(NoOrderEvent(ParseWord("HC"), 2, 2, 0));
  CHECK_FALSE(NoOrderEvent(ParseWord("Hc"), 2, 1, 0));
  for (double p : {0.1, 0.3, 0.45}) {
    const double v = Enumerate(2, p, [](const std::vector<Symbol>& w) {
      Word word;
      word.symbols = w;
      return NoOrderEvent(word, 2, 1, 1) ? 1.0 : 0.0;
    });
    CHECK(v == doctest::Approx(0.125).epsilon(1e-14));
  }
}

// The few-orders event straight from its definition: reduce every suffix
// X(-j,-1) with j in [n-k, n] and check the counts.
bool FewOrdersByDefinition(const std::vector<Symbol>& stream, std::int64_t n, std::int64_t k,
                           std::int64_t r, std::int64_t h, std::int64_t c) {
  for (std::int64_t j = n - k; j <= n; ++j) {
    Word x;
    // stream[0] is X_{-1}; X(-j,-1) in index order is the reverse prefix.
    x.symbols.assign(stream.rbegin() + static_cast<std::ptrdiff_t>(stream.size() - j),
                     stream.rend());
    if (FewOrderCounts{h, c, r}.Holds(Reduce(x))) return true;
  }
  return false;
}

TEST_CASE("few-orders event agrees with exhaustive enumeration at n=6, k=2, r=1") {
  constexpr std::int64_t n = 6;
  for (auto [h, c] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {2, 1}, {3, 2}, {0, 0}}) {
    const double scan = Enumerate(n, 0.3, [&](const std::vector<Symbol>& w) {
      SpanSource s(w);
      return FewOrderEvent(s, n, 2, 1, h, c).occurred ? 1.0 : 0.0;
    });
    const double direct = Enumerate(n, 0.3, [&](const std::vector<Symbol>& w) {
      return FewOrdersByDefinition(w, n, 2, 1, h, c) ? 1.0 : 0.0;
    });
    CHECK(scan == doctest::Approx(direct).epsilon(1e-12));
    CHECK(scan > 0.0);
  }
}

TEST_CASE("few-orders event with r >= n") {
  constexpr std::int64_t n = 5;
  // With k = n the empty word (j = 0) already qualifies.
  const auto none = Syms("hhhhh");
  SpanSource s(none);
  const FewOrderResult res = FewOrderEvent(s, n, n, n, n, n);
  CHECK(res.occurred);
  CHECK(res.j == 0);
  // With k = 0 only j = n counts: five hamburgers, at most n - r = 0 missing.
  const auto full = Syms("HHHHH");
  SpanSource t(full);
  CHECK(FewOrderEvent(t, n, 0, 0, n, 0).occurred);
  SpanSource u(none);
  CHECK_FALSE(FewOrderEvent(u, n, 0, 0, n, 0).occurred);
}

TEST_CASE("tilde event is contained in the few-orders event") {
  SymbolSampler src(1.0 / 3.0, StreamId{34, 0});
  constexpr std::int64_t n = 40;
  int tilde_hits = 0;
  for (int iter = 0; iter < 100'000; ++iter) {
    const Word w = RandomWord(src, n);
    SpanSource a(w.symbols);
    SpanSource b(w.symbols);
    const TildeEventResult t = TildeFewOrderEvent(a, n, 30, 2, 2, 1);
    const FewOrderResult e = FewOrderEvent(b, n, 30, 2, 2, 1);
    if (t.occurred) {
      ++tilde_hits;
      REQUIRE(e.occurred);
      REQUIRE(t.cheese_orders_small);
    }
  }
  CHECK(tilde_hits > 100);
}

TEST_CASE("interval event") {
  const auto a = Syms("H");
  SpanSource s1(a);
  CHECK(IntervalNoOrderEvent(s1, 1, 1));
  const auto b = Syms("hHhh");
  SpanSource s2(b);
  // Clear at j = 0 and j = 2 only.
  CHECK(LastClearingTime(s2, 4) == 2);
  SpanSource s3(b);
  CHECK_FALSE(IntervalNoOrderEvent(s3, 4, 1));
  SpanSource s4(b);
  CHECK(IntervalNoOrderEvent(s4, 4, 2));
  SymbolSampler src(0.3, StreamId{35, 0});
  for (int i = 0; i < 1000; ++i) CHECK(IntervalNoOrderEvent(src, 50, 50));
}

}  // TEST_SUITE

}  // namespace
}  // namespace burger
