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

#include "burger/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace burger {

Estimate Proportion(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("proportion of zero draws");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  double se = std::sqrt(p * (1.0 - p) / nn);
  if (se == 0.0) se = 1.0 / nn;
  return {p, se};
}

double SigmaDistance(const Estimate& mc, double exact) {
  return std::abs(mc.value - exact) / mc.se;
}

void PairMoments::Add(double x, double y) {
  ++n_;
  x_ += x;
  y_ += y;
  xx_ += x * x;
  yy_ += y * y;
  xy_ += x * y;
  xxx_ += x * x * x;
  xxxx_ += x * x * x * x;
  xxy_ += x * x * y;
  xyy_ += x * y * y;
  xxyy_ += x * x * y * y;
}

void PairMoments::Merge(const PairMoments& o) {
  n_ += o.n_;
  x_ += o.x_;
  y_ += o.y_;
  xx_ += o.xx_;
  yy_ += o.yy_;
  xy_ += o.xy_;
  xxx_ += o.xxx_;
  xxxx_ += o.xxxx_;
  xxy_ += o.xxy_;
  xyy_ += o.xyy_;
  xxyy_ += o.xxyy_;
}

double PairMoments::mean_x() const { return E(x_); }
double PairMoments::mean_y() const { return E(y_); }

double PairMoments::var_x() const {
  const double a = mean_x();
  return (E(xx_) - a * a) * static_cast<double>(n_) / static_cast<double>(n_ - 1);
}

double PairMoments::var_y() const {
  const double b = mean_y();
  return (E(yy_) - b * b) * static_cast<double>(n_) / static_cast<double>(n_ - 1);
}

double PairMoments::cov() const {
  const double a = mean_x();
  const double b = mean_y();
  return (E(xy_) - a * b) * static_cast<double>(n_) / static_cast<double>(n_ - 1);
}

double PairMoments::var_x_se() const {
  const double a = mean_x();
  const double m4 = E(xxxx_) - 4 * a * E(xxx_) + 6 * a * a * E(xx_) - 3 * a * a * a * a;
  const double v = var_x();
  return std::sqrt(std::max(0.0, m4 - v * v) / static_cast<double>(n_));
}

double PairMoments::cov_se() const {
  const double a = mean_x();
  const double b = mean_y();
  // E[(x-a)^2 (y-b)^2] from raw moments.
  const double m22 = E(xxyy_) - 2 * b * E(xxy_) - 2 * a * E(xyy_) + b * b * E(xx_) +
                     a * a * E(yy_) + 4 * a * b * E(xy_) - 3 * a * a * b * b;
  const double c = cov();
  return std::sqrt(std::max(0.0, m22 - c * c) / static_cast<double>(n_));
}

double KsOneSample(std::vector<double> sample,
                   const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("KS of an empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double KsSubDistribution(std::vector<double> observed, std::uint64_t total,
                         const std::function<double(double)>& sub_cdf,
                         double x_max) {
  if (total == 0) throw std::invalid_argument("KS of an empty sample");
  std::sort(observed.begin(), observed.end());
  const double n = static_cast<double>(total);
  double d = 0.0;
  std::size_t i = 0;
  for (; i < observed.size() && observed[i] <= x_max; ++i) {
    const double f = sub_cdf(observed[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  d = std::max(d, std::abs(static_cast<double>(i) / n - sub_cdf(x_max)));
  return d;
}

double KsTwoSample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS of an empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double KsCritical(std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return 1.358 * std::sqrt((nn + mm) / (nn * mm));
}

LineFit WeightedLineFit(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w) {
  if (x.size() != y.size() || x.size() != w.size() || x.size() < 2) {
    throw std::invalid_argument("line fit needs at least two matching points");
  }
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  const double det = sw * sxx - sx * sx;
  if (!(det > 0.0)) throw std::invalid_argument("degenerate line fit");
  LineFit fit;
  fit.slope = (sw * sxy - sx * sy) / det;
  fit.intercept = (sxx * sy - sx * sxy) / det;
  fit.slope_se = std::sqrt(sw / det);
  fit.intercept_se = std::sqrt(sxx / det);
  return fit;
}

double PearsonCorrelation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("correlation needs two matching samples");
  }
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double saa = 0, sbb = 0, sab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

double Quantile(std::vector<double> sample, double q) {
  if (sample.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(sample.begin(), sample.end());
  const double pos = q * static_cast<double>(sample.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sample.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return (1.0 - w) * sample[lo] + w * sample[hi];
}

}  // namespace burger
