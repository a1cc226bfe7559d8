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

#ifndef BURGER_REDUCED_STATE_HPP_
#define BURGER_REDUCED_STATE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "burger/symbol.hpp"

namespace burger {

/// Power-of-two ring buffer of word indices with O(1) push/pop at both ends.
/// Elements are kept in increasing index order by the callers.
class IndexDeque {
 public:
  IndexDeque() : buf_(16) {}

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  void clear() {
    head_ = 0;
    size_ = 0;
  }

  std::int64_t front() const { return buf_[head_]; }
  std::int64_t back() const { return buf_[(head_ + size_ - 1) & mask()]; }
  std::int64_t operator[](std::size_t i) const {
    return buf_[(head_ + i) & mask()];
  }

  void push_back(std::int64_t v) {
    if (size_ == buf_.size()) Grow();
    buf_[(head_ + size_) & mask()] = v;
    ++size_;
  }
  void push_front(std::int64_t v) {
    if (size_ == buf_.size()) Grow();
    head_ = (head_ + buf_.size() - 1) & mask();
    buf_[head_] = v;
    ++size_;
  }
  void pop_back() { --size_; }
  void pop_front() {
    head_ = (head_ + 1) & mask();
    --size_;
  }

 private:
  std::size_t mask() const { return buf_.size() - 1; }
  void Grow();

  std::vector<std::int64_t> buf_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

/// Canonical reduced word R(x): an order block followed by a burger stack,
/// with every surviving symbol tagged by its index in the underlying word.
///
/// The state covers a contiguous window X_lo ... X_hi of the word. Append
/// extends the window to the right (forward reading), Prepend to the left
/// (backward reading). Transitions:
///   append burger     -> push on the right of the burger stack
///   append h / c      -> cancel the rightmost H / C burger, else join the
///                        right end of the order block
///   append f          -> cancel the rightmost burger of either type
///   prepend order     -> push on the left of the order block
///   prepend H / C     -> cancel the leftmost h-or-f / c-or-f order, else join
///                        the left end of the burger stack
/// Each symbol type lives in its own index deque, so every transition is O(1)
/// and the canonical sequence is the index-ordered merge of the deques.
class ReducedState {
 public:
  /// Empty window just before `first_index` (appends start at first_index,
  /// prepends at first_index - 1).
  explicit ReducedState(std::int64_t first_index = 1);

  /// Reads X_{hi+1} = s. Returns the index of the symbol cancelled by s, if
  /// any (s itself is then dropped).
  std::optional<std::int64_t> Append(Symbol s);
  /// Reads X_{lo-1} = s. Returns the index of the symbol cancelled by s.
  std::optional<std::int64_t> Prepend(Symbol s);

  void Reset(std::int64_t first_index = 1);

  std::size_t count(Symbol s) const { return deques_[Index(s)].size(); }
  std::int64_t d() const {
    return static_cast<std::int64_t>(count(Symbol::kBurgerH)) -
           static_cast<std::int64_t>(count(Symbol::kOrderH));
  }
  std::int64_t d_star() const {
    return static_cast<std::int64_t>(count(Symbol::kBurgerC)) -
           static_cast<std::int64_t>(count(Symbol::kOrderC));
  }
  std::size_t num_orders() const {
    return count(Symbol::kOrderH) + count(Symbol::kOrderC) +
           count(Symbol::kOrderF);
  }
  std::size_t num_burgers() const {
    return count(Symbol::kBurgerH) + count(Symbol::kBurgerC);
  }
  bool has_order() const { return num_orders() != 0; }
  bool empty() const { return num_orders() == 0 && num_burgers() == 0; }
  std::size_t size() const { return num_orders() + num_burgers(); }

  /// Window bounds; the window is empty when hi < lo.
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }

  /// Index deque of surviving symbols of type s, in increasing index order.
  const IndexDeque& indices(Symbol s) const { return deques_[Index(s)]; }

  /// Order block, left to right.
  std::vector<Symbol> orders() const;
  /// Burger stack, bottom (stalest) to top (freshest).
  std::vector<Symbol> burgers() const;
  /// orders() followed by burgers().
  std::vector<Symbol> canonical() const;
  /// (index, symbol) pairs of the canonical word in index order.
  std::vector<std::pair<std::int64_t, Symbol>> tagged() const;

  /// Compares canonical words, ignoring index tags and window bounds.
  friend bool operator==(const ReducedState& a, const ReducedState& b);

 private:
  IndexDeque& deque(Symbol s) { return deques_[Index(s)]; }

  std::array<IndexDeque, 5> deques_;
  std::int64_t lo_;
  std::int64_t hi_;
};

/// R(word), folding Append left to right.
ReducedState Reduce(const Word& word);
/// R(word), folding Prepend right to left.
ReducedState ReduceBackward(const Word& word);
/// The reduced word as a plain Word starting at `first_index`.
Word ToWord(const ReducedState& state, std::int64_t first_index = 1);
/// Concatenation x·y as a Word starting at x.first_index.
Word Concat(const Word& x, const Word& y);

}  // namespace burger

#endif  // BURGER_REDUCED_STATE_HPP_
