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

#include "burger/exact_oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <thread>

#include "burger/model.hpp"

namespace burger {

namespace {

constexpr std::uint64_t Low(int k) { return (std::uint64_t{1} << k) - 1; }
constexpr std::uint64_t Offset(int length) { return Low(length); }

// Inserts bit value v at position k, shifting positions >= k up by one.
constexpr std::uint64_t InsertBit(std::uint64_t bits, int k, std::uint64_t v) {
  return (bits & Low(k)) | (v << k) | ((bits >> k) << (k + 1));
}

struct Weights {
  double push;  // H or C
  double order;  // h or c
  double flex;
};

Weights MakeWeights(double p) {
  const SymbolDist dist = SymbolDist::FromP(p);
  return {dist[Symbol::kBurgerH], dist[Symbol::kOrderH], dist[Symbol::kOrderF]};
}

void CheckLimit(std::int64_t n, std::int64_t limit) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (n > limit) {
    throw ResourceLimitError("n = " + std::to_string(n) +
                             " exceeds the exact oracle limit " + std::to_string(limit));
  }
  if (n > StackKey::kMaxLength - 1) {
    throw ResourceLimitError("stack length beyond the supported encoding");
  }
}

}  // namespace

StackKey StackKey::Decode(std::uint64_t code) {
  StackKey key;
  while (Offset(key.length + 1) <= code) ++key.length;
  key.bits = code - Offset(key.length);
  return key;
}

StackKey StackKey::FromBurgers(const std::vector<Symbol>& burgers) {
  if (burgers.size() > static_cast<std::size_t>(kMaxLength)) {
    throw std::invalid_argument("stack too long to encode");
  }
  StackKey key;
  key.length = static_cast<int>(burgers.size());
  for (int k = 0; k < key.length; ++k) {
    const Symbol s = burgers[static_cast<std::size_t>(k)];
    if (!IsBurger(s)) throw std::invalid_argument("stack keys hold burgers only");
    if (s == Symbol::kBurgerC) key.bits |= std::uint64_t{1} << k;
  }
  return key;
}

std::vector<Symbol> StackKey::ToBurgers() const {
  std::vector<Symbol> out(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k) {
    out[static_cast<std::size_t>(k)] =
        (bits >> k) & 1U ? Symbol::kBurgerC : Symbol::kBurgerH;
  }
  return out;
}

int StackKey::cheeseburgers() const { return std::popcount(bits); }

DPTable::DPTable(int capacity, std::uint64_t memory_budget) : capacity_(capacity) {
  if (capacity < 0 || capacity > StackKey::kMaxLength - 1) {
    throw ResourceLimitError("DP capacity out of range");
  }
  const std::uint64_t slots = Offset(capacity + 1);
  // A step holds the source and the target table at once.
  if (slots > memory_budget / (2 * sizeof(double))) {
    throw ResourceLimitError("DP table for stacks up to length " +
                             std::to_string(capacity) + " needs " +
                             std::to_string(2 * slots * sizeof(double)) +
                             " bytes, over the memory budget of " +
                             std::to_string(memory_budget));
  }
  mass_.assign(slots, 0.0);
}

DPTable DPTable::Initial(int capacity, std::uint64_t memory_budget) {
  DPTable table(capacity, memory_budget);
  table.mass_[0] = 1.0;
  return table;
}

double DPTable::live() const {
  double sum = 0.0;
  for (double m : mass_) sum += m;
  return sum;
}

DPTable DpStep(const DPTable& table, double p, int threads) {
  CheckP(p);
  const int next_step = table.step_ + 1;
  const int cap = table.capacity_;
  if (next_step > cap) {
    throw ResourceLimitError("DP step beyond table capacity");
  }
  const Weights w = MakeWeights(p);
  const std::vector<double>& src = table.mass_;
  auto at = [&](int length, std::uint64_t bits) { return src[Offset(length) + bits]; };

  DPTable out(cap, std::numeric_limits<std::uint64_t>::max());
  out.step_ = next_step;

  // Dead mass: every removal that finds no admissible burger.
  double dead = table.dead_;
  for (int len = next_step % 2 == 1 ? 0 : 1; len <= table.step_; len += 2) {
    const std::uint64_t all = Low(len);
    for (std::uint64_t b = 0; b <= all; ++b) {
      const double m = at(len, b);
      if (m == 0.0) continue;
      double lost = 0.0;
      if (b == all) lost += w.order;  // no hamburger
      if (b == 0) lost += w.order;    // no cheeseburger
      if (len == 0) lost += w.flex;
      dead += m * lost;
    }
  }
  out.dead_ = dead;

  // Live targets have length <= next_step with the parity of next_step.
  auto fill = [&](int len, std::uint64_t b_begin, std::uint64_t b_end) {
    double* dst = out.mass_.data() + Offset(len);
    const bool has_longer = len + 1 <= table.step_;
    for (std::uint64_t b = b_begin; b < b_end; ++b) {
      double sum = 0.0;
      if (len >= 1) sum += w.push * at(len - 1, b & Low(len - 1));
      if (has_longer) {
        // Terms are ordered by role relative to the top burger's type, so a
        // stack and its H/C mirror image add the same numbers in the same
        // order and the table is exactly symmetric.
        const unsigned top = len >= 1 ? static_cast<unsigned>((b >> (len - 1)) & 1U) : 0U;
        const unsigned other = 1U - top;
        // Topmost burger of the top type removed: it sat on top.
        sum += w.order * at(len + 1, InsertBit(b, len, top));
        // Topmost burger of the other type removed at position k: positions
        // k..len-1 of b are of the top type.
        for (int k = len;; --k) {
          sum += w.order * at(len + 1, InsertBit(b, k, other));
          if (k == 0 || ((b >> (k - 1)) & 1U) != top) break;
        }
        sum += w.flex * (at(len + 1, b | (std::uint64_t{top} << len)) +
                         at(len + 1, b | (std::uint64_t{other} << len)));
      }
      dst[b] = sum;
    }
  };

  struct Chunk {
    int len;
    std::uint64_t begin;
    std::uint64_t end;
  };
  std::vector<Chunk> chunks;
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;
  for (int len = next_step % 2; len <= next_step; len += 2) {
    const std::uint64_t count = std::uint64_t{1} << len;
    for (std::uint64_t b = 0; b < count; b += kChunk) {
      chunks.push_back({len, b, std::min(count, b + kChunk)});
    }
  }
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(chunks.size())));
  if (workers == 1) {
    for (const Chunk& c : chunks) fill(c.len, c.begin, c.end);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < chunks.size();
             i += static_cast<std::size_t>(workers)) {
          fill(chunks[i].len, chunks[i].begin, chunks[i].end);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

namespace {

DPTable RunDp(std::int64_t n, double p, std::int64_t limit,
              std::uint64_t memory_budget, int threads,
              const std::function<void(const DPTable&)>& visit = {}) {
  CheckP(p);
  CheckLimit(n, limit);
  DPTable table = DPTable::Initial(static_cast<int>(std::max<std::int64_t>(n, 1)),
                                   memory_budget);
  for (std::int64_t i = 0; i < n; ++i) {
    table = DpStep(table, p, threads);
    if (visit) visit(table);
  }
  return table;
}

}  // namespace

NoOrderTable ExactNoOrderTable(std::int64_t n, double p, std::int64_t limit,
                               std::uint64_t memory_budget, int threads) {
  const DPTable table = RunDp(n, p, limit, memory_budget, threads);
  NoOrderTable out;
  out.n = n;
  out.p = p;
  out.dead = table.dead();
  for (int len = static_cast<int>(n % 2); len <= n; len += 2) {
    for (std::uint64_t b = 0; b <= Low(len); ++b) {
      const double m = table.masses()[Offset(len) + b];
      if (m == 0.0) continue;
      const int c = std::popcount(b);
      out.survival += m;
      // Cells with more C than H are summed as mirror images of their
      // H-heavy counterparts, in the same order, to keep them bit-equal.
      if (c > len - c) continue;
      out.prob[{len - c, c}] += m;
      if (c < len - c) out.prob[{c, len - c}] += table.masses()[Offset(len) + (~b & Low(len))];
    }
  }
  return out;
}

double ExactEmptyProb(std::int64_t two_n, double p, std::int64_t limit,
                      std::uint64_t memory_budget, int threads) {
  if (two_n <= 0 || two_n % 2 != 0) {
    throw std::invalid_argument("empty-word probability needs a positive even length");
  }
  return RunDp(two_n, p, limit, memory_budget, threads).masses()[0];
}

std::vector<std::pair<std::int64_t, double>> ExactEmptyProbTable(
    std::int64_t max_two_n, double p, std::int64_t limit,
    std::uint64_t memory_budget, int threads) {
  if (max_two_n <= 0 || max_two_n % 2 != 0) {
    throw std::invalid_argument("empty-word probability needs a positive even length");
  }
  std::vector<std::pair<std::int64_t, double>> out;
  RunDp(max_two_n, p, limit, memory_budget, threads, [&](const DPTable& t) {
    if (t.step() % 2 == 0) out.emplace_back(t.step(), t.masses()[0]);
  });
  return out;
}

LossyEmptyResult LossyEmptyProbTable(std::int64_t max_two_n, double p,
                                     double threshold, std::size_t max_states) {
  CheckP(p);
  if (max_two_n <= 0 || max_two_n % 2 != 0) {
    throw std::invalid_argument("empty-word probability needs a positive even length");
  }
  if (max_two_n > StackKey::kMaxLength - 1) {
    throw ResourceLimitError("stack length beyond the supported encoding");
  }
  const Weights w = MakeWeights(p);
  LossyEmptyResult out;
  std::vector<std::pair<std::uint64_t, double>> states{{0, 1.0}};
  std::unordered_map<std::uint64_t, double> next;
  for (std::int64_t step = 1; step <= max_two_n; ++step) {
    next.clear();
    for (const auto& [code, m] : states) {
      const StackKey key = StackKey::Decode(code);
      const int len = key.length;
      const std::uint64_t b = key.bits;
      auto add = [&](int l, std::uint64_t bits, double weight) {
        next[Offset(l) + bits] += m * weight;
      };
      add(len + 1, b, w.push);
      add(len + 1, b | (std::uint64_t{1} << len), w.push);
      if (len == 0) continue;
      // Topmost H / C is the highest clear / set bit.
      const std::uint64_t hs = ~b & Low(len);
      if (hs != 0) {
        const int k = 63 - std::countl_zero(hs);
        add(len - 1, (b & Low(k)) | ((b >> (k + 1)) << k), w.order);
      }
      if (b != 0) {
        const int k = 63 - std::countl_zero(b);
        add(len - 1, (b & Low(k)) | ((b >> (k + 1)) << k), w.order);
      }
      add(len - 1, b & Low(len - 1), w.flex);
    }
    states.clear();
    for (const auto& [code, m] : next) {
      if (m < threshold) {
        out.pruned += m;
      } else {
        states.emplace_back(code, m);
      }
    }
    std::sort(states.begin(), states.end());
    out.peak_states = std::max(out.peak_states, states.size());
    if (states.size() > max_states) {
      throw ResourceLimitError("lossy DP exceeded the state limit");
    }
    if (step % 2 == 0) {
      const double empty = !states.empty() && states.front().first == 0
                               ? states.front().second
                               : 0.0;
      out.empty_prob.emplace_back(step, empty);
    }
  }
  return out;
}

namespace {

template <class Visit>
void Enumerate(int k, double p, Visit&& visit) {
  CheckP(p);
  if (k < 0 || k > kBruteForceLimit) {
    throw ResourceLimitError("brute force supports k <= " +
                             std::to_string(kBruteForceLimit));
  }
  const std::array<double, 5> prob = SymbolDist::FromP(p).prob;
  Word word{std::vector<Symbol>(static_cast<std::size_t>(k)), 1};
  std::vector<double> weight(static_cast<std::size_t>(k) + 1, 1.0);
  std::vector<int> digit(static_cast<std::size_t>(k), 0);
  // Odometer over 5^k words; weight[i] is the probability of the prefix of
  // length i.
  for (int i = 0; i < k; ++i) {
    word.symbols[static_cast<std::size_t>(i)] = kAllSymbols[0];
    weight[static_cast<std::size_t>(i) + 1] = weight[static_cast<std::size_t>(i)] * prob[0];
  }
  while (true) {
    visit(word, weight[static_cast<std::size_t>(k)]);
    int i = k - 1;
    while (i >= 0 && digit[static_cast<std::size_t>(i)] == 4) {
      digit[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) return;
    ++digit[static_cast<std::size_t>(i)];
    for (int j = i; j < k; ++j) {
      const int d = digit[static_cast<std::size_t>(j)];
      word.symbols[static_cast<std::size_t>(j)] = kAllSymbols[static_cast<std::size_t>(d)];
      weight[static_cast<std::size_t>(j) + 1] =
          weight[static_cast<std::size_t>(j)] * prob[static_cast<std::size_t>(d)];
    }
  }
}

}  // namespace

double BruteForce(int k, double p, const std::function<double(const Word&)>& f) {
  double sum = 0.0;
  Enumerate(k, p, [&](const Word& w, double weight) {
    const double v = f(w);
    if (v != 0.0) sum += weight * v;
  });
  return sum;
}

std::map<std::int64_t, double> BruteForceDistribution(
    int k, double p, const std::function<std::int64_t(const Word&)>& f) {
  std::map<std::int64_t, double> out;
  Enumerate(k, p, [&](const Word& w, double weight) { out[f(w)] += weight; });
  return out;
}

}  // namespace burger
