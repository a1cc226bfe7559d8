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

#ifndef BURGER_PATH_HPP_
#define BURGER_PATH_HPP_

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "burger/model.hpp"
#include "burger/reduced_state.hpp"
#include "burger/symbol.hpp"

namespace burger {

/// Match structure of a finite window: partner[i - first_index] is the index
/// of the symbol that cancelled (or was cancelled by) X_i, or kNoMatch.
struct MatchRecord {
  static constexpr std::int64_t kNoMatch = INT64_MIN;

  std::int64_t first_index = 1;
  std::vector<std::int64_t> partner;
  std::vector<std::int64_t> pending_orders;
  std::vector<std::int64_t> pending_burgers;

  std::int64_t match(std::int64_t i) const {
    return partner.at(static_cast<std::size_t>(i - first_index));
  }
  bool matched(std::int64_t i) const { return match(i) != kNoMatch; }
};

/// Pairs each order with the burger it consumes during forward reduction.
MatchRecord MatchFunction(const Word& word);

/// Thrown when backward extension cannot match every flexible order within
/// the cap.
class UnresolvedFlexError : public std::runtime_error {
 public:
  UnresolvedFlexError(std::int64_t consumed, std::int64_t unresolved);
  std::int64_t consumed() const { return consumed_; }
  std::int64_t unresolved() const { return unresolved_; }

 private:
  std::int64_t consumed_;
  std::int64_t unresolved_;
};

inline constexpr std::int64_t kDefaultFlexCap = 1'000'000;

struct FlexResolution {
  Word y_word;
  /// Number of backward-extension symbols X_{a-1}, X_{a-2}, ... consumed.
  std::int64_t extension_used = 0;
};

/// Replaces every flexible order of `word` by the order type of its match.
/// Orders matched inside the window use the forward match; flexible orders
/// left pending at the left boundary are resolved by prepending symbols drawn
/// from `extension` (read as X_{a-1}, X_{a-2}, ...) until each is cancelled.
/// Throws UnresolvedFlexError after `cap` extension symbols.
FlexResolution ResolveFlex(const Word& word, SymbolSampler& extension,
                           std::int64_t cap = kDefaultFlexCap);

/// Y-word resolution when every flexible order is matched inside the window
/// (for instance on the event of no surviving orders). Throws
/// UnresolvedFlexError otherwise.
Word ResolveFlexInWindow(const Word& word);

/// Lattice path (d, d*) of a word without flexible orders.
///
/// d(i) = d(Y(1,i)) for i >= 0 and d(i) = -d(Y(i+1,0)) for i < 0, so values
/// are stored for i in [first_index - 1, last_index]; the window must
/// contain index 0 or start at 1.
class DiscretePath {
 public:
  /// Throws std::invalid_argument if y_word contains a flexible order or the
  /// window does not touch the origin.
  explicit DiscretePath(const Word& y_word);

  std::int64_t first() const { return first_; }
  std::int64_t last() const {
    return first_ + static_cast<std::int64_t>(d_.size()) - 1;
  }
  std::int64_t d(std::int64_t i) const { return d_.at(Offset(i)); }
  std::int64_t d_star(std::int64_t i) const { return dstar_.at(Offset(i)); }
  const std::vector<std::int64_t>& d_values() const { return d_; }
  const std::vector<std::int64_t>& d_star_values() const { return dstar_; }

  /// Piecewise-linear interpolation at real time t in [first(), last()].
  std::pair<double, double> At(double t) const;

 private:
  std::size_t Offset(std::int64_t i) const {
    return static_cast<std::size_t>(i - first_);
  }

  std::int64_t first_;
  std::vector<std::int64_t> d_;
  std::vector<std::int64_t> dstar_;
};

/// Z^n(t) = n^{-1/2} (d(nt), d*(nt)).
class ScaledPath {
 public:
  ScaledPath(const DiscretePath& path, std::int64_t n);
  std::pair<double, double> operator()(double t) const;

 private:
  const DiscretePath* path_;
  double n_;
  double scale_;
};

/// True iff Z^n stays in the closed first quadrant on [0, 1] and
/// Z^n(1) = n^{-1/2}(h, c). Needs a path over [0, n].
bool QuadrantEndpointEvent(const DiscretePath& path, std::int64_t n,
                           std::int64_t h, std::int64_t c);

}  // namespace burger

#endif  // BURGER_PATH_HPP_
