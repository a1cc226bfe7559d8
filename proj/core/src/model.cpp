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

#include "burger/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace burger {

void CheckP(double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::domain_error("p must lie in (0, 1/2), got " + std::to_string(p));
  }
}

double PFromKappa(double kappa) {
  if (!(kappa > 4.0 && kappa < 8.0)) {
    throw std::domain_error("kappa must lie in (4, 8)");
  }
  const double s = std::sqrt(2.0 + 2.0 * std::cos(8.0 * std::numbers::pi / kappa));
  return s / (2.0 + s);
}

double KappaFromP(double p) {
  CheckP(p);
  const double s = 2.0 * p / (1.0 - p);
  const double cos_theta = s * s / 2.0 - 1.0;
  // theta = 8 pi / kappa lies in (pi, 2 pi).
  const double theta = 2.0 * std::numbers::pi - std::acos(cos_theta);
  return 8.0 * std::numbers::pi / theta;
}

double MuFromP(double p) {
  CheckP(p);
  const double pi = std::numbers::pi;
  return pi / (2.0 * (pi - std::atan(std::sqrt(1.0 - 2.0 * p) / p)));
}

double MuPrimeFromP(double p) {
  CheckP(p);
  const double pi = std::numbers::pi;
  return pi / (2.0 * (pi + std::atan(std::sqrt(1.0 - 2.0 * p) / p)));
}

ModelParams Exponents(double p) {
  CheckP(p);
  ModelParams params;
  params.p = p;
  params.q = 4.0 * p * p / ((1.0 - p) * (1.0 - p));
  params.kappa = KappaFromP(p);
  params.mu = MuFromP(p);
  params.mu_prime = MuPrimeFromP(p);
  return params;
}

SymbolDist SymbolDist::FromP(double p) {
  CheckP(p);
  SymbolDist dist;
  dist.prob[Index(Symbol::kBurgerH)] = 0.25;
  dist.prob[Index(Symbol::kBurgerC)] = 0.25;
  dist.prob[Index(Symbol::kOrderH)] = (1.0 - p) / 4.0;
  dist.prob[Index(Symbol::kOrderC)] = (1.0 - p) / 4.0;
  dist.prob[Index(Symbol::kOrderF)] =
      1.0 - 0.5 - 2.0 * ((1.0 - p) / 4.0);
  return dist;
}

namespace {

std::uint32_t OrderWidth(double p) {
  // round((1-p)/4 * 2^32)
  return static_cast<std::uint32_t>(std::llround((1.0 - p) * 0x1.0p30));
}

}  // namespace

SymbolSampler::SymbolSampler(double p, StreamId id)
    : SymbolSampler(p, StreamKey(id)) {}

SymbolSampler::SymbolSampler(double p, std::uint64_t key)
    : p_(p), engine_(key) {
  CheckP(p);
  order_h_end_ = kHalf + OrderWidth(p);
  order_c_end_ = order_h_end_ + OrderWidth(p);
}

}  // namespace burger
