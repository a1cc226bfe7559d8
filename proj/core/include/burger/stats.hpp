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

#ifndef BURGER_STATS_HPP_
#define BURGER_STATS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace burger {

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

/// Binomial proportion with its standard error. With zero (or all) hits the
/// plug-in SE vanishes; 1/n is reported instead so SEs stay positive.
Estimate Proportion(std::uint64_t hits, std::uint64_t n);

/// |a - b| in units of the combined standard error.
double SigmaDistance(const Estimate& mc, double exact);

/// Mean/covariance of pairs from raw power sums, mergeable in a fixed
/// order. Meant for O(1)-scale data such as rescaled path endpoints.
class PairMoments {
 public:
  void Add(double x, double y);
  void Merge(const PairMoments& other);
  std::uint64_t count() const { return n_; }
  double mean_x() const;
  double mean_y() const;
  double var_x() const;
  double var_y() const;
  double cov() const;
  /// Delta-method SEs from the centered fourth moments.
  double var_x_se() const;
  double cov_se() const;

 private:
  double E(double s) const { return s / static_cast<double>(n_); }

  std::uint64_t n_ = 0;
  double x_ = 0, y_ = 0, xx_ = 0, yy_ = 0, xy_ = 0;
  double xxx_ = 0, xxxx_ = 0, xxy_ = 0, xyy_ = 0, xxyy_ = 0;
};

/// sup |F_n - F| for an uncensored sample.
double KsOneSample(std::vector<double> sample,
                   const std::function<double(double)>& cdf);

/// KS distance between sub-distributions on (-inf, x_max]: `observed` holds
/// the uncensored values out of `total` draws and sub_cdf(x) is the model
/// probability of being observed and <= x.
double KsSubDistribution(std::vector<double> observed, std::uint64_t total,
                         const std::function<double(double)>& sub_cdf,
                         double x_max);

/// Two-sample KS statistic.
double KsTwoSample(std::vector<double> a, std::vector<double> b);

/// Asymptotic 5% critical value of the two-sample KS statistic.
double KsCritical(std::size_t n, std::size_t m);

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_se = 0.0;
  double slope_se = 0.0;
};

/// Weighted least squares y = a + b x with weights w (inverse variances).
/// SEs are the model-based ones, sqrt of the diagonal of (X'WX)^-1.
LineFit WeightedLineFit(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w);

double PearsonCorrelation(std::span<const double> a, std::span<const double> b);

/// Linear-interpolated quantile of an unsorted sample, q in [0, 1].
double Quantile(std::vector<double> sample, double q);

}  // namespace burger

#endif  // BURGER_STATS_HPP_
