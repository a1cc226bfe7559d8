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

#include "burger/stopping_times.hpp"

namespace burger {

LastCrossing ComputeLastCrossing(const DiscretePath& path, std::int64_t n,
                                 std::int64_t m, BurgerType type) {
  if (path.first() > 0 || path.last() < n) {
    throw std::invalid_argument("last crossing needs a path over [0, n]");
  }
  for (std::int64_t i = 0; i <= n; ++i) {
    if (path.d(i) < 0 || path.d_star(i) < 0) {
      throw std::invalid_argument("last crossing needs a path with no surviving orders");
    }
  }
  const bool ham = type == BurgerType::kHamburger;
  auto level = [&](std::int64_t i) { return ham ? path.d(i) : path.d_star(i); };
  auto other = [&](std::int64_t i) { return ham ? path.d_star(i) : path.d(i); };
  if (level(n) <= m) return {0, 0};
  std::int64_t k = n;
  while (k > 0 && level(k) > m) --k;
  // level(0) = 0 <= m, so the loop always lands on a crossing.
  return {k, other(k)};
}

bool NoOrderEvent(const Word& word, std::int64_t n, std::int64_t h,
                  std::int64_t c) {
  if (word.first_index != 1 || static_cast<std::int64_t>(word.size()) < n) {
    throw std::invalid_argument("no-order event needs X_1..X_n");
  }
  ReducedState state(1);
  for (std::int64_t i = 1; i <= n; ++i) state.Append(word.at(i));
  return !state.has_order() &&
         static_cast<std::int64_t>(state.count(Symbol::kBurgerH)) == h &&
         static_cast<std::int64_t>(state.count(Symbol::kBurgerC)) == c;
}

}  // namespace burger
