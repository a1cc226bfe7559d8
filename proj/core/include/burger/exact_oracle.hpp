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

// Exact probabilities for small n.
//
// While no order has survived, the reduced word is a pure burger stack and
// the forward machine is a Markov chain on stacks. Once an order survives it
// survives forever, so all of that mass goes into a single absorbing "dead"
// cell. DPTable holds the stack distribution densely: a stack of length L
// with bit k set iff position k (0 = bottom) is a cheeseburger lives at slot
// 2^L - 1 + bits.

#ifndef BURGER_EXACT_ORACLE_HPP_
#define BURGER_EXACT_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "burger/symbol.hpp"

namespace burger {

/// Thrown when a request exceeds a configured size or memory limit.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A burger stack, bottom first: bit k of `bits` is 1 iff position k is C.
struct StackKey {
  static constexpr int kMaxLength = 62;

  int length = 0;
  std::uint64_t bits = 0;

  std::uint64_t Encode() const { return ((std::uint64_t{1} << length) - 1) + bits; }
  static StackKey Decode(std::uint64_t code);
  static StackKey FromBurgers(const std::vector<Symbol>& burgers);
  std::vector<Symbol> ToBurgers() const;
  int cheeseburgers() const;
  int hamburgers() const { return length - cheeseburgers(); }

  friend bool operator==(const StackKey&, const StackKey&) = default;
};

inline constexpr std::int64_t kDefaultDpLimit = 22;
inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{2} << 30;

/// Dense distribution over stacks of length <= capacity after `step` symbols.
class DPTable {
 public:
  /// Throws ResourceLimitError if two tables of this capacity exceed the
  /// memory budget.
  DPTable(int capacity, std::uint64_t memory_budget = kDefaultMemoryBudget);

  /// Point mass on the empty stack at step 0.
  static DPTable Initial(int capacity,
                         std::uint64_t memory_budget = kDefaultMemoryBudget);

  int capacity() const { return capacity_; }
  int step() const { return step_; }
  double dead() const { return dead_; }
  double mass(const StackKey& key) const { return mass_.at(key.Encode()); }
  const std::vector<double>& masses() const { return mass_; }
  /// Sum of live mass, in slot order.
  double live() const;

 private:
  friend DPTable DpStep(const DPTable& table, double p, int threads);

  int capacity_;
  int step_ = 0;
  double dead_ = 0.0;
  std::vector<double> mass_;
};

/// One symbol step: push H (1/4), push C (1/4), remove the topmost H
/// ((1-p)/4), remove the topmost C ((1-p)/4), remove the top (p/2). Removals
/// with no admissible burger go to the dead cell. Each target slot sums its
/// predecessors in a fixed order, so results do not depend on `threads`.
/// Throws ResourceLimitError when the step would outgrow the capacity.
DPTable DpStep(const DPTable& table, double p, int threads = 1);

/// P(E_n^{h,c}) for every (h, c) with nonzero mass, plus P(I > n).
struct NoOrderTable {
  std::int64_t n = 0;
  double p = 0.0;
  std::map<std::pair<std::int64_t, std::int64_t>, double> prob;
  double survival = 0.0;
  double dead = 0.0;

  double at(std::int64_t h, std::int64_t c) const {
    const auto it = prob.find({h, c});
    return it == prob.end() ? 0.0 : it->second;
  }
};

NoOrderTable ExactNoOrderTable(std::int64_t n, double p,
                               std::int64_t limit = kDefaultDpLimit,
                               std::uint64_t memory_budget = kDefaultMemoryBudget,
                               int threads = 1);

/// P(X(1, two_n) = ∅). Throws std::invalid_argument for odd two_n.
double ExactEmptyProb(std::int64_t two_n, double p,
                      std::int64_t limit = kDefaultDpLimit,
                      std::uint64_t memory_budget = kDefaultMemoryBudget,
                      int threads = 1);

/// P(X(1, 2k) = ∅) for 2k = 2, 4, ..., max_two_n from a single DP run.
std::vector<std::pair<std::int64_t, double>> ExactEmptyProbTable(
    std::int64_t max_two_n, double p, std::int64_t limit = kDefaultDpLimit,
    std::uint64_t memory_budget = kDefaultMemoryBudget, int threads = 1);

/// Sparse DP with mass pruning below `threshold`. Approximate: the pruned
/// mass is reported rather than redistributed.
struct LossyEmptyResult {
  std::vector<std::pair<std::int64_t, double>> empty_prob;
  double pruned = 0.0;
  std::size_t peak_states = 0;
  bool approximate = true;
};

LossyEmptyResult LossyEmptyProbTable(std::int64_t max_two_n, double p,
                                     double threshold,
                                     std::size_t max_states = 50'000'000);

inline constexpr int kBruteForceLimit = 9;

/// E[f(X_1..X_k)] over all 5^k words weighted by their probabilities.
double BruteForce(int k, double p, const std::function<double(const Word&)>& f);

/// Law of an integer-valued functional over all 5^k words.
std::map<std::int64_t, double> BruteForceDistribution(
    int k, double p, const std::function<std::int64_t(const Word&)>& f);

}  // namespace burger

#endif  // BURGER_EXACT_ORACLE_HPP_
