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

#include "burger/brownian.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "burger/model.hpp"

namespace burger {

using std::numbers::pi;

CovSpec CovSpec::FromP(double p) {
  CheckP(p);
  CovSpec s;
  s.p = p;
  s.var = (1.0 - p) / 2.0;
  s.cov = p / 2.0;
  s.alpha = p / (1.0 - p);
  s.resid_var = (1.0 - 2.0 * p) / (2.0 * (1.0 - p));
  return s;
}

GridPath SampleBm(const CovSpec& spec, double T, double dt, Gaussian& normal) {
  if (!(dt > 0.0) || !(T >= 0.0)) throw std::invalid_argument("bad time grid");
  const auto steps = static_cast<std::size_t>(std::llround(T / dt));
  GridPath path;
  path.dt = dt;
  path.u.resize(steps + 1);
  path.v.resize(steps + 1);
  const double su = std::sqrt(spec.var * dt);
  const double sw = std::sqrt(spec.resid_var * dt);
  double u = 0.0;
  double v = 0.0;
  path.u[0] = path.v[0] = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double du = su * normal();
    u += du;
    v += spec.alpha * du + sw * normal();
    path.u[i] = u;
    path.v[i] = v;
  }
  return path;
}

AttemptsExhaustedError::AttemptsExhaustedError(std::int64_t attempts,
                                               std::int64_t accepted)
    : std::runtime_error("bridge rejection gave up after " +
                         std::to_string(attempts) + " attempts (" +
                         std::to_string(accepted) + " accepted)"),
      attempts_(attempts),
      accepted_(accepted) {}

namespace {

// Probability that a Brownian bridge with variance rate var over time h
// between a > 0 and b > 0 touches zero.
double CrossingProb(double a, double b, double var, double h) {
  const double x = 2.0 * a * b / (var * h);
  return x > 50.0 ? 0.0 : std::exp(-x);
}

}  // namespace

BridgeSample SampleQuadrantBridge(const CovSpec& spec, double start_u,
                                  double start_v, double end_u, double end_v,
                                  double duration, const BridgeOptions& opts,
                                  Gaussian& normal) {
  if (!(end_u > 0.0 && end_v > 0.0)) {
    throw std::invalid_argument("bridge endpoint must lie in the open quadrant");
  }
  if (start_u < 0.0 || start_v < 0.0) {
    throw std::invalid_argument("bridge start must lie in the closed quadrant");
  }
  if (!(opts.dt > 0.0) || !(duration > 0.0)) {
    throw std::invalid_argument("bad time grid");
  }
  const auto steps = std::max<std::int64_t>(1, std::llround(duration / opts.dt));
  const double h = duration / static_cast<double>(steps);
  Engine& engine = normal.engine();

  BridgeSample out;
  out.path.dt = h;
  out.path.u.resize(static_cast<std::size_t>(steps) + 1);
  out.path.v.resize(static_cast<std::size_t>(steps) + 1);
  auto& pu = out.path.u;
  auto& pv = out.path.v;
  pu[0] = start_u;
  pv[0] = start_v;

  for (out.attempts = 1; out.attempts <= opts.max_attempts; ++out.attempts) {
    double u = start_u;
    double v = start_v;
    bool ok = true;
    for (std::int64_t i = 0; i < steps && ok; ++i) {
      double nu;
      double nv;
      if (i + 1 == steps) {
        nu = end_u;
        nv = end_v;
      } else {
        const double rest = h * static_cast<double>(steps - i);
        const double frac = h / rest;
        const double c = h * (rest - h) / rest;
        const double du = std::sqrt(spec.var * c) * normal();
        const double dw = std::sqrt(spec.resid_var * c) * normal();
        nu = u + frac * (end_u - u) + du;
        nv = v + frac * (end_v - v) + spec.alpha * du + dw;
        if (nu < 0.0 || nv < 0.0) {
          ok = false;
          break;
        }
      }
      if (opts.crossing_correction) {
        double survive = 1.0;
        if (u > 0.0) survive *= 1.0 - CrossingProb(u, nu, spec.var, h);
        if (v > 0.0) survive *= 1.0 - CrossingProb(v, nv, spec.var, h);
        if (survive < 1.0 && engine.Uniform() >= survive) {
          ok = false;
          break;
        }
      }
      u = nu;
      v = nv;
      pu[static_cast<std::size_t>(i) + 1] = u;
      pv[static_cast<std::size_t>(i) + 1] = v;
    }
    if (ok) return out;
  }
  throw AttemptsExhaustedError(opts.max_attempts, 0);
}

GParams GParams::FromP(double p) {
  CheckP(p);
  GParams g;
  g.a0 = 1.0 / (pi * std::sqrt(1.0 - 2.0 * p));
  g.a1 = 1.0 / (1.0 - p);
  g.a2 = (1.0 - p) / (1.0 - 2.0 * p);
  g.a3 = p / (1.0 - p);
  return g;
}

double GDensity(double t, double v, const GParams& g) {
  if (!(t > 0.0)) throw std::domain_error("g needs t > 0");
  const double w = v + g.a3;
  return g.a0 / (t * t) * std::exp(-(g.a1 + g.a2 * w * w) / t);
}

double GTimeDensity(double t, const GParams& g) {
  if (!(t > 0.0)) throw std::domain_error("g needs t > 0");
  return g.a0 * std::sqrt(pi / g.a2) * std::pow(t, -1.5) * std::exp(-g.a1 / t);
}

double GTimeCdf(double t, const GParams& g) {
  if (t <= 0.0) return 0.0;
  // integral of s^-3/2 exp(-a1/s) over (0, t] is sqrt(pi/a1) erfc(sqrt(a1/t)).
  return g.a0 * std::sqrt(pi / g.a2) * std::sqrt(pi / g.a1) *
         std::erfc(std::sqrt(g.a1 / t));
}

double GJointCdf(double t_max, double v, const GParams& g) {
  if (t_max <= 0.0) return 0.0;
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double z = (v + g.a3) * std::sqrt(g.a2 / t);
    return GTimeDensity(t, g) * 0.5 * std::erfc(-z);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, t_max, 15, 1e-13);
}

double GSup(const GParams& g) {
  const double t = g.a1 / 2.0;
  return GDensity(t, -g.a3, g);
}

FirstPassageSample SampleFirstPassagePair(const CovSpec& spec, double dt,
                                          double t_max, Gaussian& normal) {
  if (!(dt > 0.0) || !(t_max > 0.0)) throw std::invalid_argument("bad time grid");
  const double step_sd = std::sqrt(spec.var * dt);
  Engine& engine = normal.engine();
  const auto steps = static_cast<std::int64_t>(std::ceil(t_max / dt));
  double x = 0.0;
  for (std::int64_t i = 0; i < steps; ++i) {
    const double nx = x + step_sd * normal();
    bool hit = nx <= -1.0;
    if (!hit) {
      const double q = CrossingProb(x + 1.0, nx + 1.0, spec.var, dt);
      hit = q > 0.0 && engine.Uniform() < q;
    }
    if (hit) {
      const double tau = (static_cast<double>(i) + 0.5) * dt;
      const double v = -spec.alpha + std::sqrt(spec.resid_var * tau) * normal();
      return {tau, v, false};
    }
    x = nx;
  }
  return {t_max, 0.0, true};
}

double LastExitShape(double u, double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("last-exit density needs 0 < t < 1");
  return std::exp(-u * u / (2.0 * t)) / std::sqrt(t * (1.0 - t));
}

double LastExitDensity(double u, double t, double norm) {
  return norm * LastExitShape(u, t);
}

LastExit FindLastExit(const std::vector<double>& x, double dt, double level) {
  if (x.empty() || x.back() <= level) return {};
  for (std::size_t i = x.size() - 1; i-- > 0;) {
    if (x[i] <= level) {
      const double w = (level - x[i]) / (x[i + 1] - x[i]);
      return {(static_cast<double>(i) + w) * dt, static_cast<std::int64_t>(i)};
    }
  }
  return {};
}

CorrelatedLastExitParams CorrelatedLastExitParams::FromP(double p, double norm) {
  const CovSpec s = CovSpec::FromP(p);
  CorrelatedLastExitParams c;
  c.a1 = s.alpha;
  c.a2 = 1.0 / (2.0 * s.var);
  c.a3 = 1.0 / (2.0 * s.resid_var);
  c.a0 = norm / std::sqrt(2.0 * pi * s.resid_var);
  return c;
}

double CorrelatedLastExitDensity(double u, double v, double t, double T,
                                 const CorrelatedLastExitParams& c) {
  if (!(t > 0.0 && t < T)) {
    throw std::domain_error("correlated last-exit density needs 0 < t < T");
  }
  const double w = v - c.a1 * u;
  return c.a0 / (t * std::sqrt(T - t)) * std::exp(-(c.a2 * u * u + c.a3 * w * w) / t);
}

}  // namespace burger
