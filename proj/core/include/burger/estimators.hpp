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

// Monte Carlo experiments and fits.
//
// Every experiment splits its samples into fixed-size batches. Batch b draws
// from StreamId{seed, tag + b}, where the tag separates experiments (and the
// walk/Brownian halves of a comparison), and batch results are reduced in
// batch order. Results therefore depend on (options, seed) only, never on
// the thread count.

#ifndef BURGER_ESTIMATORS_HPP_
#define BURGER_ESTIMATORS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "burger/brownian.hpp"
#include "burger/model.hpp"
#include "burger/stats.hpp"

namespace burger {

struct RunOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  std::uint64_t batch_size = 1 << 14;
};

// ---------------------------------------------------------------------------
// Tail fits

/// Per-sample outcome over a grid: bit i of `hit` says the event holds at
/// grid point i; bit i of `unknown` says the scan could not decide it (for
/// instance a horizon was reached first). Grids hold at most 64 points.
struct TailHits {
  std::uint64_t hit = 0;
  std::uint64_t unknown = 0;
};

/// One or more events evaluated on the same sample. series[s] names event s
/// and lists its grid; `sample` fills one TailHits per series.
struct TailSeries {
  std::string name;
  std::vector<std::int64_t> grid;
};

struct TailEvent {
  std::vector<TailSeries> series;
  std::function<void(SymbolSampler&, std::span<TailHits>)> sample;
};

struct TailPoint {
  std::int64_t n = 0;
  Estimate probability;
  double unknown_fraction = 0.0;
};

struct TailFit {
  std::string event;
  std::uint64_t samples = 0;
  std::vector<TailPoint> points;
  /// Weighted least-squares slope of log P against log n, and -slope.
  double slope = 0.0;
  double slope_se = 0.0;
  double exponent = 0.0;
  /// Percentile bootstrap CI of the exponent over batch resamples.
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  int bootstrap_resamples = 0;
  /// Exponents refit with undecided samples counted as misses / as hits.
  double exponent_unknown_as_miss = 0.0;
  double exponent_unknown_as_hit = 0.0;
  double max_unknown_fraction = 0.0;
};

/// Estimates P(event at n) on each grid point and fits the log-log slope.
/// Throws std::domain_error when a probability estimate is zero.
std::vector<TailFit> FitTail(const TailEvent& event, double p,
                             std::uint64_t samples, const RunOptions& run,
                             std::uint64_t stream_tag, int bootstrap = 200);

/// Event {I > n}.
TailEvent FirstOrderTailEvent(std::vector<std::int64_t> grid);
/// Event {P > n}.
TailEvent ClearingTailEvent(std::vector<std::int64_t> grid);
/// Events {J_1^H > n} on j_grid and {L_1^H > n}, {L_1^H <= -n} on l_grid,
/// from one backward scan up to `horizon` (L is undecided when J_1^H is
/// beyond the horizon).
TailEvent HamburgerTailEvent(std::vector<std::int64_t> j_grid,
                             std::vector<std::int64_t> l_grid,
                             std::int64_t horizon);
/// Renewal event {n = J_m^H for some m}. By stationarity it has the law of
/// {the hamburger X_1 is still unconsumed at time n} = {Ĩ_1^H > n}, which a
/// forward scan decides with early abort; `literal` reads n symbols backward
/// instead (cost n per grid point, for cross-checks).
TailEvent RenewalTailEvent(std::vector<std::int64_t> grid, bool literal = false);
/// Interval event: some j in [n-k, n] has X(-j,-1) free of orders, on a grid
/// of k at fixed n.
TailEvent IntervalTailEvent(std::int64_t n, std::vector<std::int64_t> k_grid);
/// Synthetic X = U^(-1/alpha) with P(X > n) = n^-alpha for n >= 1.
TailEvent SyntheticTailEvent(std::vector<std::int64_t> grid, double alpha);

/// Dyadic grid 2^lo, ..., 2^hi.
std::vector<std::int64_t> DyadicGrid(int lo, int hi);

// ---------------------------------------------------------------------------
// Local limit of (J_m^H, L_m^H)

struct LocalLimitOptions {
  int m = 32;
  std::uint64_t samples = 1'000'000;
  /// Backward scans stop at horizon_factor * m^2 symbols.
  double horizon_factor = 5.0;
  double t_lo = 0.1;
  double t_hi = 5.0;
  double v_max = 5.0;
  /// Bin widths in the rescaled (t, v) window. J_m and L_m have opposite
  /// parity constraints (J_m = m + L_m mod 2), so single cells are compared
  /// through bin averages.
  double t_bin = 0.35;
  double v_bin = 0.5;
  /// Compare L_m/m against -v of g (see estimators.cpp).
  bool reflect_v = true;
};

struct LocalLimitBin {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double v_lo = 0.0;
  double v_hi = 0.0;
  std::uint64_t lattice_points = 0;
  std::uint64_t count = 0;
  /// Averages over the lattice points of the bin of m^3 P̂(J = k, L = l) and
  /// of g(k/m^2, ±l/m).
  double empirical = 0.0;
  double se = 0.0;
  double model = 0.0;
  double model_unreflected = 0.0;
};

struct LocalLimitReport {
  LocalLimitOptions options;
  std::uint64_t samples = 0;
  std::uint64_t truncated = 0;
  std::uint64_t in_window = 0;
  std::vector<LocalLimitBin> bins;
  double sup_g = 0.0;
  double sup_discrepancy = 0.0;
  double l1_discrepancy = 0.0;
  double sup_discrepancy_unreflected = 0.0;
  /// Bin with the largest empirical average and g's bin average there.
  double mode_empirical = 0.0;
  double mode_model = 0.0;
  std::uint64_t min_bin_count = 0;
  bool low_count_warning = false;
};

LocalLimitReport LocalLimitCheck(double p, const LocalLimitOptions& opts,
                                 const RunOptions& run);

// ---------------------------------------------------------------------------
// Exact-vs-Monte Carlo

struct ExactComparison {
  std::string quantity;
  Estimate mc;
  double exact = 0.0;
  double sigma = 0.0;
};

struct McVsExactReport {
  std::int64_t n = 0;
  std::uint64_t samples = 0;
  std::vector<ExactComparison> rows;
};

/// P(I > n), P(E_n^{h,c}) and, for even n, P(X(1,n) = ∅) by survivor MC
/// against the DP.
McVsExactReport McVsExact(double p, std::int64_t n, std::int64_t h,
                          std::int64_t c, std::uint64_t samples,
                          const RunOptions& run);

struct EmptyWordReport {
  std::vector<std::pair<std::int64_t, double>> exact;
  /// Local slopes log(P(2n)/P(2n-2)) / log(2n/(2n-2)).
  std::vector<std::pair<std::int64_t, double>> local_slopes;
  bool slopes_strictly_decreasing = false;
  double final_slope = 0.0;
  /// -(1 + 2 mu), the asymptotic exponent; finite-size corrections keep the
  /// DP slopes well above it at these lengths.
  double target_exponent = 0.0;
  std::uint64_t mc_samples = 0;
  std::vector<ExactComparison> mc;
};

EmptyWordReport EmptyWordExperiment(double p, std::int64_t dp_limit,
                                    std::vector<std::int64_t> mc_two_n,
                                    std::uint64_t samples, const RunOptions& run);

// ---------------------------------------------------------------------------
// Conditioned paths against the pinned Brownian bridge

struct ConditionedOptions {
  std::int64_t n = 1024;
  std::int64_t h = 32;
  std::int64_t c = 32;
  std::int64_t window = 3;
  std::uint64_t walk_samples = 5000;
  std::uint64_t bm_samples = 5000;
  std::vector<double> slices{0.25, 0.5, 0.75};
  double bm_dt = 1e-3;
  bool crossing_correction = true;
  std::uint64_t max_attempts = 4'000'000'000ULL;
  /// Accepted walks (or bridges) per batch.
  std::uint64_t per_batch = 64;
};

struct SliceKs {
  double t = 0.0;
  /// Plain two-sample KS on the U and V marginals.
  double ks_u = 0.0;
  double ks_v = 0.0;
  /// KS evaluated at lattice midpoints (k + 1/2)/sqrt(n), which compares the
  /// walk's lattice law with the bridge law binned on the same cells.
  double ks_u_lattice = 0.0;
  double ks_v_lattice = 0.0;
  double critical = 0.0;
};

struct PathCompareReport {
  ConditionedOptions options;
  std::uint64_t walk_samples = 0;
  std::uint64_t walk_attempts = 0;
  std::uint64_t bm_samples = 0;
  std::uint64_t bm_attempts = 0;
  bool all_walks_in_quadrant = false;
  bool all_walks_in_window = false;
  std::vector<SliceKs> slices;
};

PathCompareReport ConditionedPathCompare(double p, const ConditionedOptions& opts,
                                         const RunOptions& run);

struct EndpointCell {
  std::int64_t h = 0;
  std::int64_t c = 0;
  Estimate mc;
  double exact = 0.0;
  double sigma = 0.0;
};

struct EndpointLawReport {
  std::int64_t n = 0;
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  std::vector<EndpointCell> cells;
  double max_sigma = 0.0;
};

/// Law of (h, c) given I > n by rejection MC against DP conditionals.
EndpointLawReport ConditionedEndpointLaw(double p, std::int64_t n,
                                         std::uint64_t attempts,
                                         const RunOptions& run);

// ---------------------------------------------------------------------------
// Flexible orders

struct FlexPoint {
  std::int64_t n = 0;
  Estimate mean_flex;
  Estimate mean_ham_orders;
  /// Fraction of samples with N_f > N_h^nu, per nu.
  std::vector<Estimate> violation;
};

struct FlexReport {
  std::vector<double> nus;
  std::uint64_t samples = 0;
  std::vector<FlexPoint> points;
  double flex_growth_exponent = 0.0;
  double ham_growth_exponent = 0.0;
  bool total_order_bound_holds = true;
};

FlexReport FlexibleOrderDiagnostic(double p, std::vector<std::int64_t> grid,
                                   std::vector<double> nus, std::uint64_t samples,
                                   const RunOptions& run);

// ---------------------------------------------------------------------------
// Path covariance

struct CovarianceReport {
  std::int64_t n = 0;
  std::uint64_t samples = 0;
  Estimate var_u;
  Estimate cov;
  double expected_var = 0.0;
  double expected_cov = 0.0;
  std::uint64_t unresolved = 0;
  std::int64_t max_extension = 0;
};

/// Cov(U^n(1), V^n(1)) from Y-words (flexible orders resolved with backward
/// extension, capped at flex_cap symbols; capped samples are counted and
/// dropped).
CovarianceReport PathCovariance(double p, std::int64_t n, std::uint64_t samples,
                                std::int64_t flex_cap, const RunOptions& run);

// ---------------------------------------------------------------------------
// Brownian reference checks

struct FirstPassageReport {
  std::uint64_t samples = 0;
  double dt = 0.0;
  double t_max = 0.0;
  double censored_fraction = 0.0;
  double censored_expected = 0.0;
  /// KS between the observed sub-distributions on {tau <= t_max} and g.
  double ks_tau = 0.0;
  double ks_v = 0.0;
  GParams g;
  double g_total_mass = 0.0;
};

FirstPassageReport FirstPassageCheck(double p, std::uint64_t samples, double dt,
                                     double t_max, const RunOptions& run);

struct LastExitLevel {
  double u = 0.0;
  std::vector<double> bin_edges;
  /// Histogram of tau_u on {tau_u > 0} per path and unit time.
  std::vector<double> density;
  std::vector<double> density_se;
  /// Bin averages of exp(-u^2/2t)/sqrt(t(1-t)).
  std::vector<double> shape;
  double shape_correlation = 0.0;
  /// Poisson maximum-likelihood norm c for the model c * shape.
  Estimate fitted_norm;
  Estimate positive_fraction;
  /// P(B(1) > u) and the masses implied by the two candidate norms.
  double expected_positive = 0.0;
  double stated_mass = 0.0;
  double halved_mass = 0.0;
  double sigma_stated = 0.0;
  double sigma_halved = 0.0;
};

struct LastExitReport {
  std::uint64_t paths = 0;
  double dt = 0.0;
  std::vector<LastExitLevel> levels;
  std::string conclusion;
};

LastExitReport LastExitCheck(std::vector<double> levels, std::uint64_t paths,
                             double dt, int bins, const RunOptions& run);

struct CorrelatedLastExitReport {
  double p = 0.0;
  double u = 0.0;
  std::uint64_t paths = 0;
  double dt = 0.0;
  double shape_correlation = 0.0;
  Estimate fitted_norm;
  std::uint64_t positive = 0;
};

CorrelatedLastExitReport CorrelatedLastExitCheck(double p, double u,
                                                 std::uint64_t paths, double dt,
                                                 const RunOptions& run);

}  // namespace burger

#endif  // BURGER_ESTIMATORS_HPP_
