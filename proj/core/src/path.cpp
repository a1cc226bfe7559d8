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

#include "burger/path.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace burger {

MatchRecord MatchFunction(const Word& word) {
  MatchRecord record;
  record.first_index = word.first_index;
  record.partner.assign(word.size(), MatchRecord::kNoMatch);
  ReducedState state(word.first_index);
  std::int64_t i = word.first_index;
  for (Symbol s : word.symbols) {
    if (const auto matched = state.Append(s)) {
      record.partner[static_cast<std::size_t>(i - word.first_index)] = *matched;
      record.partner[static_cast<std::size_t>(*matched - word.first_index)] = i;
    }
    ++i;
  }
  for (const auto& [idx, s] : state.tagged()) {
    (IsOrder(s) ? record.pending_orders : record.pending_burgers).push_back(idx);
  }
  return record;
}

UnresolvedFlexError::UnresolvedFlexError(std::int64_t consumed,
                                         std::int64_t unresolved)
    : std::runtime_error("flexible orders unresolved after " +
                         std::to_string(consumed) + " extension symbols (" +
                         std::to_string(unresolved) + " left)"),
      consumed_(consumed),
      unresolved_(unresolved) {}

namespace {

Symbol OrderFor(Symbol burger) {
  return burger == Symbol::kBurgerH ? Symbol::kOrderH : Symbol::kOrderC;
}

// Forward pass: returns the reduced state and writes in-window F resolutions
// into y.
ReducedState ForwardResolve(const Word& word, Word& y) {
  y = word;
  ReducedState state(word.first_index);
  std::int64_t i = word.first_index;
  for (Symbol s : word.symbols) {
    const auto matched = state.Append(s);
    if (matched && s == Symbol::kOrderF) {
      y.symbols[static_cast<std::size_t>(i - word.first_index)] =
          OrderFor(word.at(*matched));
    }
    ++i;
  }
  return state;
}

}  // namespace

FlexResolution ResolveFlex(const Word& word, SymbolSampler& extension,
                           std::int64_t cap) {
  FlexResolution result;
  ReducedState state = ForwardResolve(word, result.y_word);
  auto pending = static_cast<std::int64_t>(state.count(Symbol::kOrderF));
  while (pending > 0) {
    if (result.extension_used >= cap) {
      throw UnresolvedFlexError(result.extension_used, pending);
    }
    const Symbol s = extension.Next();
    ++result.extension_used;
    const auto matched = state.Prepend(s);
    if (matched && *matched >= word.first_index &&
        word.at(*matched) == Symbol::kOrderF) {
      result.y_word.symbols[static_cast<std::size_t>(*matched -
                                                     word.first_index)] =
          OrderFor(s);
      --pending;
    }
  }
  return result;
}

Word ResolveFlexInWindow(const Word& word) {
  Word y;
  const ReducedState state = ForwardResolve(word, y);
  if (state.count(Symbol::kOrderF) != 0) {
    throw UnresolvedFlexError(0,
                              static_cast<std::int64_t>(state.count(Symbol::kOrderF)));
  }
  return y;
}

DiscretePath::DiscretePath(const Word& y_word) : first_(y_word.first_index - 1) {
  if (y_word.first_index > 1 || y_word.last_index() < 0) {
    throw std::invalid_argument("path window must contain the origin");
  }
  const std::size_t len = y_word.size() + 1;
  d_.assign(len, 0);
  dstar_.assign(len, 0);
  auto increment = [](Symbol s) -> std::pair<int, int> {
    switch (s) {
      case Symbol::kBurgerH: return {1, 0};
      case Symbol::kBurgerC: return {0, 1};
      case Symbol::kOrderH: return {-1, 0};
      case Symbol::kOrderC: return {0, -1};
      case Symbol::kOrderF: break;
    }
    throw std::invalid_argument("path requires a word without flexible orders");
  };
  // Forward from the origin: d(i) = d(i-1) + delta(Y_i).
  for (std::int64_t i = 1; i <= y_word.last_index(); ++i) {
    const auto [dd, dc] = increment(y_word.at(i));
    d_[Offset(i)] = d_[Offset(i - 1)] + dd;
    dstar_[Offset(i)] = dstar_[Offset(i - 1)] + dc;
  }
  // Backward from the origin: d(i) = d(i+1) - delta(Y_{i+1}).
  for (std::int64_t i = -1; i >= first_; --i) {
    const auto [dd, dc] = increment(y_word.at(i + 1));
    d_[Offset(i)] = d_[Offset(i + 1)] - dd;
    dstar_[Offset(i)] = dstar_[Offset(i + 1)] - dc;
  }
}

std::pair<double, double> DiscretePath::At(double t) const {
  const double lo = static_cast<double>(first());
  const double hi = static_cast<double>(last());
  if (!(t >= lo && t <= hi)) {
    throw std::out_of_range("path evaluated outside its window");
  }
  const auto i = static_cast<std::int64_t>(std::floor(t));
  if (i >= last()) {
    return {static_cast<double>(d(last())), static_cast<double>(d_star(last()))};
  }
  const double w = t - static_cast<double>(i);
  return {(1.0 - w) * static_cast<double>(d(i)) + w * static_cast<double>(d(i + 1)),
          (1.0 - w) * static_cast<double>(d_star(i)) +
              w * static_cast<double>(d_star(i + 1))};
}

ScaledPath::ScaledPath(const DiscretePath& path, std::int64_t n)
    : path_(&path),
      n_(static_cast<double>(n)),
      scale_(1.0 / std::sqrt(static_cast<double>(n))) {}

std::pair<double, double> ScaledPath::operator()(double t) const {
  const auto [u, v] = path_->At(n_ * t);
  return {scale_ * u, scale_ * v};
}

bool QuadrantEndpointEvent(const DiscretePath& path, std::int64_t n,
                           std::int64_t h, std::int64_t c) {
  for (std::int64_t i = 0; i <= n; ++i) {
    if (path.d(i) < 0 || path.d_star(i) < 0) return false;
  }
  return path.d(n) == h && path.d_star(n) == c;
}

}  // namespace burger
