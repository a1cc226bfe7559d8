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

// Continuum reference laws for the rescaled inventory paths: the correlated
// Brownian motion Z = (U, V), quadrant-conditioned bridges, the first-passage
// density g and the last-exit densities.

#ifndef BURGER_BROWNIAN_HPP_
#define BURGER_BROWNIAN_HPP_

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/random/normal_distribution.hpp>

#include "burger/rng.hpp"

namespace burger {

/// Covariance of Z: Var U(t) = Var V(t) = (1-p)t/2, Cov = pt/2. V splits as
/// alpha U + W with alpha = p/(1-p) and W independent of U with variance
/// resid_var t, resid_var = (1-2p)/(2(1-p)).
struct CovSpec {
  double p = 0.0;
  double var = 0.0;
  double cov = 0.0;
  double alpha = 0.0;
  double resid_var = 0.0;

  static CovSpec FromP(double p);
};

/// Standard normal draws from an Engine (Boost ziggurat).
class Gaussian {
 public:
  explicit Gaussian(Engine& engine) : engine_(&engine) {}
  double operator()() { return dist_(*engine_); }
  Engine& engine() { return *engine_; }

 private:
  Engine* engine_;
  boost::random::normal_distribution<double> dist_;
};

/// Values of (U, V) at times 0, dt, 2 dt, ... (start time first).
struct GridPath {
  double dt = 0.0;
  double t0 = 0.0;
  std::vector<double> u;
  std::vector<double> v;

  std::size_t size() const { return u.size(); }
  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
};

/// Grid samples of Z on [0, T] from Z(0) = 0, exact in law at grid times.
GridPath SampleBm(const CovSpec& spec, double T, double dt, Gaussian& normal);

class AttemptsExhaustedError : public std::runtime_error {
 public:
  AttemptsExhaustedError(std::int64_t attempts, std::int64_t accepted);
  std::int64_t attempts() const { return attempts_; }
  std::int64_t accepted() const { return accepted_; }

 private:
  std::int64_t attempts_;
  std::int64_t accepted_;
};

struct BridgeOptions {
  double dt = 1e-3;
  std::int64_t max_attempts = 10'000'000;
  /// Reject each segment with the Brownian-bridge probability of having
  /// crossed zero in between, per coordinate. Segments that start on the
  /// boundary are exempt (they would always be rejected).
  bool crossing_correction = true;
};

struct BridgeSample {
  GridPath path;
  std::int64_t attempts = 0;
};

/// Bridge of Z from `start` at time 0 to `end` at time `duration`, rejected
/// until every grid point (and, optionally, every segment) stays in the
/// closed first quadrant. Rejection happens as soon as a step leaves, so the
/// cost of a failed attempt is its survival time. The endpoint must lie in
/// the open quadrant. Throws AttemptsExhaustedError.
BridgeSample SampleQuadrantBridge(const CovSpec& spec, double start_u,
                                  double start_v, double end_u, double end_v,
                                  double duration, const BridgeOptions& opts,
                                  Gaussian& normal);

/// Constants of g(t, v) = a0 t^-2 exp(-(a1 + a2 (v + a3)^2) / t), the joint
/// density of (tau, V(tau)) with tau the first passage of U to -1.
/// First passage: sigma^2 = (1-p)/2 gives a Levy density in t with
/// a1 = 1/(2 sigma^2). Given tau, V(tau) = -alpha + W(tau) is Gaussian with
/// mean -alpha and variance resid_var tau, so a3 = alpha and
/// a2 = 1/(2 resid_var); a0 collects both normalizations.
struct GParams {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  static GParams FromP(double p);
};

/// Throws std::domain_error for t <= 0.
double GDensity(double t, double v, const GParams& g);
/// Time marginal: integral of g over v.
double GTimeDensity(double t, const GParams& g);
/// P(tau <= t).
double GTimeCdf(double t, const GParams& g);
/// P(tau <= t_max, V(tau) <= v) by quadrature over t.
double GJointCdf(double t_max, double v, const GParams& g);
/// sup of g: attained at t = a1/2, v = -a3.
double GSup(const GParams& g);

struct FirstPassageSample {
  double tau = 0.0;
  double v = 0.0;
  bool censored = false;
};

/// Simulates U on a dt-grid until it first reaches -1, checking each step
/// for an in-between crossing with the bridge crossing probability; the
/// crossing time is then taken at the step midpoint. V(tau) is alpha U(tau)
/// plus the independent part, drawn once with variance resid_var tau.
/// Paths still above -1 at t_max are returned censored.
FirstPassageSample SampleFirstPassagePair(const CovSpec& spec, double dt,
                                          double t_max, Gaussian& normal);

/// Normalizations for the last-exit density of standard BM. The stated
/// density uses 1/pi; integrating it gives twice P(B(1) > u), and the
/// simulation fits 1/(2 pi).
inline constexpr double kLastExitStatedNorm = 1.0 / std::numbers::pi;
inline constexpr double kLastExitFittedNorm = 0.5 / std::numbers::pi;

/// norm * exp(-u^2 / 2t) / sqrt(t (1 - t)) for t in (0, 1). Throws
/// std::domain_error otherwise.
double LastExitDensity(double u, double t, double norm = kLastExitStatedNorm);
/// exp(-u^2 / 2t) / sqrt(t (1 - t)).
double LastExitShape(double u, double t);

/// Last time in [0, T] after which the grid path x stays strictly above
/// level; 0 if there is none. The crossing inside the final segment is
/// located by linear interpolation. Returns the interpolated time and the
/// grid index of the segment start (or -1 when the time is 0).
struct LastExit {
  double t = 0.0;
  std::int64_t segment = -1;
};
LastExit FindLastExit(const std::vector<double>& x, double dt, double level);

/// Joint density of (tau_u, V(tau_u)) where tau_u is the last time in [0, T]
/// after which U stays above u:
///   a0 / (t sqrt(T - t)) exp(-(a2 u^2 + a3 (v - a1 u)^2) / t)
/// with a1 = alpha, a2 = 1/(2 var), a3 = 1/(2 resid_var) and
/// a0 = norm / sqrt(2 pi resid_var). Throws std::domain_error unless
/// 0 < t < T.
struct CorrelatedLastExitParams {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  static CorrelatedLastExitParams FromP(double p,
                                        double norm = kLastExitFittedNorm);
};
double CorrelatedLastExitDensity(double u, double v, double t, double T,
                                 const CorrelatedLastExitParams& c);

}  // namespace burger

#endif  // BURGER_BROWNIAN_HPP_
