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

// Stopping times and event predicates of the inventory model, computed from
// symbol streams with the forward (append) and backward (prepend) machines.
//
// Forward streams yield X_1, X_2, ...; backward streams yield X_{-1}, X_{-2},
// ... Every scan that can run forever takes an explicit horizon and reports
// truncation instead of looping.

#ifndef BURGER_STOPPING_TIMES_HPP_
#define BURGER_STOPPING_TIMES_HPP_

#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "burger/path.hpp"
#include "burger/reduced_state.hpp"
#include "burger/symbol.hpp"

namespace burger {

template <class S>
concept SymbolSource = requires(S& s) {
  { s.Next() } -> std::same_as<Symbol>;
};

/// Replays a fixed symbol sequence; throws std::out_of_range when exhausted.
class SpanSource {
 public:
  explicit SpanSource(std::span<const Symbol> symbols) : symbols_(symbols) {}
  Symbol Next() {
    if (pos_ >= symbols_.size()) throw std::out_of_range("symbol source exhausted");
    return symbols_[pos_++];
  }
  std::size_t consumed() const { return pos_; }

 private:
  std::span<const Symbol> symbols_;
  std::size_t pos_ = 0;
};

/// A time capped at a horizon: value == horizon + 1 and truncated == true
/// when the defining condition was not met within the horizon.
struct HorizonTime {
  std::int64_t value = 0;
  bool truncated = false;
};

enum class BurgerType { kHamburger, kCheeseburger };

/// I ∧ (n+1): the first i <= n at which X(1,i) contains an order. Stops
/// reading the moment an order survives.
template <SymbolSource S>
HorizonTime FirstOrderTime(S& src, std::int64_t n) {
  ReducedState state(1);
  for (std::int64_t i = 1; i <= n; ++i) {
    const Symbol s = src.Next();
    if (!state.Append(s) && IsOrder(s)) return {i, false};
  }
  return {n + 1, true};
}

/// P: the smallest j >= 1 such that X(-j,-1) contains no orders.
template <SymbolSource S>
HorizonTime BackwardClearingTime(S& src, std::int64_t horizon) {
  ReducedState state(0);
  for (std::int64_t j = 1; j <= horizon; ++j) {
    state.Prepend(src.Next());
    if (!state.has_order()) return {j, false};
  }
  return {horizon + 1, true};
}

/// One backward burger-add time: the m-th time a burger of the chosen type
/// joins the stack, with the opposite-type discrepancy at that time.
struct BurgerAddTime {
  std::int64_t m = 0;
  std::int64_t j = 0;
  std::int64_t l = 0;
};

struct BackwardScan {
  std::vector<BurgerAddTime> times;
  std::int64_t steps = 0;
  bool exhausted = false;
};

namespace internal {

// Records J_m, L_m while prepending symbols from src. At each add time the
// reduced word must hold no same-type and no flexible orders.
template <SymbolSource S>
BackwardScan ScanBurgerAdds(S& src, BurgerType type, std::int64_t m_max,
                            std::int64_t horizon) {
  const Symbol burger =
      type == BurgerType::kHamburger ? Symbol::kBurgerH : Symbol::kBurgerC;
  const Symbol same_order =
      type == BurgerType::kHamburger ? Symbol::kOrderH : Symbol::kOrderC;
  BackwardScan scan;
  if (m_max <= 0) return scan;
  scan.times.reserve(static_cast<std::size_t>(m_max));
  ReducedState state(0);
  for (std::int64_t j = 1; j <= horizon; ++j) {
    const Symbol s = src.Next();
    scan.steps = j;
    if (state.Prepend(s) || s != burger) continue;
    if (state.count(same_order) != 0 || state.count(Symbol::kOrderF) != 0) {
      throw std::logic_error("burger survived past an admissible order");
    }
    const std::int64_t l =
        type == BurgerType::kHamburger ? state.d_star() : state.d();
    scan.times.push_back(
        {static_cast<std::int64_t>(scan.times.size()) + 1, j, l});
    if (static_cast<std::int64_t>(scan.times.size()) == m_max) return scan;
  }
  scan.exhausted = true;
  return scan;
}

}  // namespace internal

/// (J_m, L_m) for m = 1..m_max read backward from -1. For hamburgers L_m is
/// d*(X(-J_m,-1)); for cheeseburgers it is d(X(-J_m,-1)).
template <SymbolSource S>
BackwardScan BackwardBurgerTimes(S& src, std::int64_t m_max,
                                 std::int64_t horizon,
                                 BurgerType type = BurgerType::kHamburger) {
  return internal::ScanBurgerAdds(src, type, m_max, horizon);
}

/// (J_{n,r}, L_{n,r}) for r = 1..r_max with X_1...X_n read backward from n.
/// J counts symbols read, so X_n = H gives J_{n,1} = 1. Exhausted at j = n.
inline BackwardScan BackwardFromN(const Word& word, std::int64_t r_max,
                                  BurgerType type = BurgerType::kHamburger) {
  std::vector<Symbol> reversed(word.symbols.rbegin(), word.symbols.rend());
  SpanSource src(reversed);
  return internal::ScanBurgerAdds(src, type, r_max,
                                  static_cast<std::int64_t>(word.size()));
}

struct ForwardTimes {
  std::vector<std::int64_t> times;
  bool exhausted = false;
};

/// Ĩ_m for m = 1..m_max: the m-th smallest i with no burger of the chosen
/// type in X(1,i).
template <SymbolSource S>
ForwardTimes ForwardNoBurgerTimes(S& src, std::int64_t m_max,
                                  std::int64_t horizon,
                                  BurgerType type = BurgerType::kHamburger) {
  const Symbol burger =
      type == BurgerType::kHamburger ? Symbol::kBurgerH : Symbol::kBurgerC;
  ForwardTimes out;
  if (m_max <= 0) return out;
  ReducedState state(1);
  for (std::int64_t i = 1; i <= horizon; ++i) {
    state.Append(src.Next());
    if (state.count(burger) == 0) {
      out.times.push_back(i);
      if (static_cast<std::int64_t>(out.times.size()) == m_max) return out;
    }
  }
  out.exhausted = true;
  return out;
}

/// Literal renewal event: n = J_m^H for some m, i.e. X(-n+1,-1) holds no
/// hamburger or flexible orders and X_{-n} is a hamburger. Reads n symbols.
template <SymbolSource S>
bool HamburgerAddedAt(S& src, std::int64_t n) {
  ReducedState state(0);
  for (std::int64_t j = 1; j < n; ++j) state.Prepend(src.Next());
  return state.count(Symbol::kOrderH) == 0 &&
         state.count(Symbol::kOrderF) == 0 && src.Next() == Symbol::kBurgerH;
}

/// (K_{n,m}, Q_{n,m}). For hamburgers K is the last i <= n with d(i) <= m
/// provided d stays >= m+1 on [K+1, n] (K = 0 when d(n) <= m), and
/// Q = N_C(X(1,K)) = d*(K). The cheeseburger version swaps d and d*.
struct LastCrossing {
  std::int64_t k = 0;
  std::int64_t q = 0;
};

/// Requires a path over [0, n] that stays in the quadrant (the event I > n);
/// throws std::invalid_argument otherwise.
LastCrossing ComputeLastCrossing(const DiscretePath& path, std::int64_t n,
                                 std::int64_t m,
                                 BurgerType type = BurgerType::kHamburger);

/// 𝓔_n^{h,c}: X(1,n) contains no orders, h hamburgers and c cheeseburgers.
/// Uses the first n symbols of the word (indices 1..n).
bool NoOrderEvent(const Word& word, std::int64_t n, std::int64_t h,
                  std::int64_t c);

/// Count constraints of the few-orders event at one backward time j.
struct FewOrderCounts {
  std::int64_t h = 0;
  std::int64_t c = 0;
  std::int64_t r = 0;

  bool Holds(const ReducedState& s) const {
    const auto bh = static_cast<std::int64_t>(s.count(Symbol::kBurgerH));
    const auto bc = static_cast<std::int64_t>(s.count(Symbol::kBurgerC));
    const auto oh = static_cast<std::int64_t>(s.count(Symbol::kOrderH));
    const auto oc = static_cast<std::int64_t>(s.count(Symbol::kOrderC));
    const auto of = static_cast<std::int64_t>(s.count(Symbol::kOrderF));
    return bh >= h - r && bh <= h && bc >= c - r && bc <= c && oh + of <= r &&
           oc + of <= r;
  }
};

struct FewOrderResult {
  bool occurred = false;
  /// Smallest qualifying j in [n-k, n], or n + 1.
  std::int64_t j = 0;
};

/// E_{n,k,r}^{h,c}: some j in [n-k, n] has N_H(X(-j,-1)) in [h-r, h],
/// N_C in [c-r, c], N_h + N_f <= r and N_c + N_f <= r. j = 0 is the empty
/// word. Reads at most n symbols.
template <SymbolSource S>
FewOrderResult FewOrderEvent(S& src, std::int64_t n, std::int64_t k,
                             std::int64_t r, std::int64_t h, std::int64_t c) {
  if (k > n || k < 0) throw std::invalid_argument("few-order event needs 0 <= k <= n");
  const FewOrderCounts counts{h, c, r};
  ReducedState state(0);
  if (n - k == 0 && counts.Holds(state)) return {true, 0};
  for (std::int64_t j = 1; j <= n; ++j) {
    state.Prepend(src.Next());
    if (j >= n - k && counts.Holds(state)) return {true, j};
  }
  return {false, n + 1};
}

/// Ẽ_{n,k,r}^{h,c}: J_h^H in [n-k, n], L_h^H in [c-r, c] and
/// N_C(X(-J_h^H,-1)) <= c. Also reports N_c(X(-J_h^H,-1)) <= r, which
/// follows from the other conditions. Reads at most n symbols.
struct TildeEventResult {
  bool occurred = false;
  bool cheese_orders_small = false;
};

template <SymbolSource S>
TildeEventResult TildeFewOrderEvent(S& src, std::int64_t n, std::int64_t k,
                                    std::int64_t r, std::int64_t h,
                                    std::int64_t c) {
  if (k > n || k < 0) throw std::invalid_argument("few-order event needs 0 <= k <= n");
  TildeEventResult out;
  if (h <= 0) return out;
  ReducedState state(0);
  std::int64_t added = 0;
  for (std::int64_t j = 1; j <= n; ++j) {
    const Symbol s = src.Next();
    if (state.Prepend(s) || s != Symbol::kBurgerH) continue;
    if (++added < h) continue;
    const std::int64_t l = state.d_star();
    const auto cheese = static_cast<std::int64_t>(state.count(Symbol::kBurgerC));
    out.occurred = j >= n - k && l >= c - r && l <= c && cheese <= c;
    out.cheese_orders_small =
        static_cast<std::int64_t>(state.count(Symbol::kOrderC)) <= r;
    return out;
  }
  return out;
}

/// Largest j in [0, n] with X(-j,-1) free of orders (j = 0 is the empty
/// word). Stops once the order block is longer than the steps left.
template <SymbolSource S>
std::int64_t LastClearingTime(S& src, std::int64_t n) {
  ReducedState state(0);
  std::int64_t last = 0;
  for (std::int64_t j = 1; j <= n; ++j) {
    state.Prepend(src.Next());
    const auto orders = static_cast<std::int64_t>(state.num_orders());
    if (orders == 0) {
      last = j;
    } else if (orders > n - j) {
      break;
    }
  }
  return last;
}

/// ∃ j in [n-k, n] with X(-j,-1) free of orders.
template <SymbolSource S>
bool IntervalNoOrderEvent(S& src, std::int64_t n, std::int64_t k) {
  if (k < 1 || k > n) throw std::invalid_argument("interval event needs 1 <= k <= n");
  return LastClearingTime(src, n) >= n - k;
}

}  // namespace burger

#endif  // BURGER_STOPPING_TIMES_HPP_
