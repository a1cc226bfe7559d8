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

#include "burger/reduced_state.hpp"

#include <algorithm>

namespace burger {

void IndexDeque::Grow() {
  std::vector<std::int64_t> next(buf_.size() * 2);
  for (std::size_t i = 0; i < size_; ++i) next[i] = (*this)[i];
  buf_ = std::move(next);
  head_ = 0;
}

ReducedState::ReducedState(std::int64_t first_index)
    : lo_(first_index), hi_(first_index - 1) {}

void ReducedState::Reset(std::int64_t first_index) {
  for (auto& dq : deques_) dq.clear();
  lo_ = first_index;
  hi_ = first_index - 1;
}

std::optional<std::int64_t> ReducedState::Append(Symbol s) {
  const std::int64_t idx = ++hi_;
  switch (s) {
    case Symbol::kBurgerH:
    case Symbol::kBurgerC:
      deque(s).push_back(idx);
      return std::nullopt;
    case Symbol::kOrderH:
    case Symbol::kOrderC: {
      IndexDeque& target =
          deque(s == Symbol::kOrderH ? Symbol::kBurgerH : Symbol::kBurgerC);
      if (!target.empty()) {
        const std::int64_t matched = target.back();
        target.pop_back();
        return matched;
      }
      deque(s).push_back(idx);
      return std::nullopt;
    }
    case Symbol::kOrderF: {
      IndexDeque& h = deque(Symbol::kBurgerH);
      IndexDeque& c = deque(Symbol::kBurgerC);
      IndexDeque* target = nullptr;
      if (!h.empty() && (c.empty() || h.back() > c.back())) {
        target = &h;
      } else if (!c.empty()) {
        target = &c;
      }
      if (target != nullptr) {
        const std::int64_t matched = target->back();
        target->pop_back();
        return matched;
      }
      deque(s).push_back(idx);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<std::int64_t> ReducedState::Prepend(Symbol s) {
  const std::int64_t idx = --lo_;
  if (IsOrder(s)) {
    deque(s).push_front(idx);
    return std::nullopt;
  }
  IndexDeque& same =
      deque(s == Symbol::kBurgerH ? Symbol::kOrderH : Symbol::kOrderC);
  IndexDeque& flex = deque(Symbol::kOrderF);
  IndexDeque* target = nullptr;
  if (!same.empty() && (flex.empty() || same.front() < flex.front())) {
    target = &same;
  } else if (!flex.empty()) {
    target = &flex;
  }
  if (target != nullptr) {
    const std::int64_t matched = target->front();
    target->pop_front();
    return matched;
  }
  deque(s).push_front(idx);
  return std::nullopt;
}

namespace {

// Index-ordered merge of the given symbol types.
std::vector<std::pair<std::int64_t, Symbol>> Merge(
    const ReducedState& state, std::initializer_list<Symbol> types) {
  std::vector<std::pair<std::int64_t, Symbol>> out;
  for (Symbol t : types) {
    const IndexDeque& dq = state.indices(t);
    for (std::size_t i = 0; i < dq.size(); ++i) out.emplace_back(dq[i], t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Symbol> Strip(
    const std::vector<std::pair<std::int64_t, Symbol>>& tagged) {
  std::vector<Symbol> out;
  out.reserve(tagged.size());
  for (const auto& [idx, s] : tagged) out.push_back(s);
  return out;
}

}  // namespace

std::vector<Symbol> ReducedState::orders() const {
  return Strip(Merge(*this, {Symbol::kOrderH, Symbol::kOrderC, Symbol::kOrderF}));
}

std::vector<Symbol> ReducedState::burgers() const {
  return Strip(Merge(*this, {Symbol::kBurgerH, Symbol::kBurgerC}));
}

std::vector<Symbol> ReducedState::canonical() const {
  std::vector<Symbol> out = orders();
  const std::vector<Symbol> b = burgers();
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<std::pair<std::int64_t, Symbol>> ReducedState::tagged() const {
  return Merge(*this, {Symbol::kBurgerH, Symbol::kBurgerC, Symbol::kOrderH,
                       Symbol::kOrderC, Symbol::kOrderF});
}

bool operator==(const ReducedState& a, const ReducedState& b) {
  for (Symbol s : kAllSymbols) {
    if (a.count(s) != b.count(s)) return false;
  }
  return a.canonical() == b.canonical();
}

ReducedState Reduce(const Word& word) {
  ReducedState state(word.first_index);
  for (Symbol s : word.symbols) state.Append(s);
  return state;
}

ReducedState ReduceBackward(const Word& word) {
  ReducedState state(word.last_index() + 1);
  for (auto it = word.symbols.rbegin(); it != word.symbols.rend(); ++it) {
    state.Prepend(*it);
  }
  return state;
}

Word ToWord(const ReducedState& state, std::int64_t first_index) {
  return Word{state.canonical(), first_index};
}

Word Concat(const Word& x, const Word& y) {
  Word out{x.symbols, x.first_index};
  out.symbols.insert(out.symbols.end(), y.symbols.begin(), y.symbols.end());
  return out;
}

}  // namespace burger
