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

#ifndef BURGER_MODEL_HPP_
#define BURGER_MODEL_HPP_

#include <array>
#include <cstdint>

#include "burger/rng.hpp"
#include "burger/symbol.hpp"

namespace burger {

/// Parameters of the inventory model and the exponents derived from p.
///
/// p in (0, 1/2) is the flexible-order weight. The FK weight is
/// q = 4p^2/(1-p)^2 and kappa in (4, 8) is the SLE/CLE parameter linked to p
/// through p = sqrt(2+2cos(8pi/kappa)) / (2 + sqrt(2+2cos(8pi/kappa))).
/// The cone exponents are mu = kappa/8 in (1/2, 1) and
/// mu' = kappa/(4(kappa-2)) in (1/3, 1/2).
struct ModelParams {
  double p = 0.0;
  double q = 0.0;
  double kappa = 0.0;
  double mu = 0.0;
  double mu_prime = 0.0;
};

/// Throws std::domain_error unless 0 < p < 1/2.
void CheckP(double p);

/// All derived parameters for p. kappa comes from the closed-form inversion
/// cos(8pi/kappa) = (2p/(1-p))^2/2 - 1 with 8pi/kappa in (pi, 2pi); mu and
/// mu' use the arctan expressions.
ModelParams Exponents(double p);

/// Forward map kappa -> p.
double PFromKappa(double kappa);
double KappaFromP(double p);

/// mu = pi / (2(pi - arctan(sqrt(1-2p)/p))).
double MuFromP(double p);
/// mu' = pi / (2(pi + arctan(sqrt(1-2p)/p))).
double MuPrimeFromP(double p);
inline double MuFromKappa(double kappa) { return kappa / 8.0; }
inline double MuPrimeFromKappa(double kappa) {
  return kappa / (4.0 * (kappa - 2.0));
}

/// Per-symbol probabilities, indexed by Index(Symbol).
struct SymbolDist {
  std::array<double, 5> prob{};

  /// 1/4, 1/4, (1-p)/4, (1-p)/4 and the complement for the flexible order.
  static SymbolDist FromP(double p);
  double operator[](Symbol s) const { return prob[Index(s)]; }
};

/// Infinite i.i.d. symbol stream. Each 64-bit engine output yields two
/// symbols, one per 32-bit half, by comparison against cumulative thresholds
/// (probability resolution 2^-32). Identical StreamIds give identical streams.
class SymbolSampler {
 public:
  SymbolSampler(double p, StreamId id);
  SymbolSampler(double p, std::uint64_t key);

  Symbol Next() {
    if (have_spare_) {
      have_spare_ = false;
      return Classify(spare_);
    }
    const std::uint64_t bits = engine_();
    spare_ = static_cast<std::uint32_t>(bits >> 32);
    have_spare_ = true;
    return Classify(static_cast<std::uint32_t>(bits));
  }

  Engine& engine() { return engine_; }
  double p() const { return p_; }

 private:
  // Branch-free: symbols arrive in random order, so a compare chain would
  // mispredict on most draws.
  Symbol Classify(std::uint32_t u) const {
    const unsigned idx = static_cast<unsigned>(u >= kQuarter) +
                         static_cast<unsigned>(u >= kHalf) +
                         static_cast<unsigned>(u >= order_h_end_) +
                         static_cast<unsigned>(u >= order_c_end_);
    return static_cast<Symbol>(idx);
  }

  static constexpr std::uint32_t kQuarter = 1u << 30;
  static constexpr std::uint32_t kHalf = 1u << 31;

  double p_;
  Engine engine_;
  std::uint32_t order_h_end_;
  std::uint32_t order_c_end_;
  std::uint32_t spare_ = 0;
  bool have_spare_ = false;
};

}  // namespace burger

#endif  // BURGER_MODEL_HPP_
