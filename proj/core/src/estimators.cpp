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

#include "burger/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "burger/exact_oracle.hpp"
#include "burger/parallel.hpp"
#include "burger/path.hpp"
#include "burger/stopping_times.hpp"

namespace burger {

namespace {

using std::numbers::pi;

// Stream tags keep the experiments' batch streams apart.
constexpr std::uint64_t kTagLocalLimit = 2ULL << 40;
constexpr std::uint64_t kTagMcExact = 3ULL << 40;
constexpr std::uint64_t kTagEmpty = 4ULL << 40;
constexpr std::uint64_t kTagWalks = 5ULL << 40;
constexpr std::uint64_t kTagBridges = 6ULL << 40;
constexpr std::uint64_t kTagEndpoint = 7ULL << 40;
constexpr std::uint64_t kTagFlex = 8ULL << 40;
constexpr std::uint64_t kTagCovariance = 9ULL << 40;
constexpr std::uint64_t kTagFirstPassage = 10ULL << 40;
constexpr std::uint64_t kTagLastExit = 11ULL << 40;
constexpr std::uint64_t kTagCorrLastExit = 12ULL << 40;
constexpr std::uint64_t kTagBootstrap = 13ULL << 40;

void CheckGrid(const std::vector<std::int64_t>& grid) {
  if (grid.empty() || grid.size() > 64) {
    throw std::invalid_argument("grids need between 1 and 64 points");
  }
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end() || grid.front() < 1) {
    throw std::invalid_argument("grids must be strictly increasing and positive");
  }
}

std::uint64_t Bit(std::size_t i) { return std::uint64_t{1} << i; }

// Bits i with value(i) satisfying pred, over a grid.
template <class Pred>
std::uint64_t GridMask(const std::vector<std::int64_t>& grid, Pred pred) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (pred(grid[i])) mask |= Bit(i);
  }
  return mask;
}

std::uint64_t AllBits(std::size_t n) { return n == 64 ? ~0ULL : Bit(n) - 1; }

struct FitResult {
  LineFit line;
  bool ok = false;
};

FitResult FitLogLog(const std::vector<std::int64_t>& grid,
                    const std::vector<double>& prob, std::uint64_t samples) {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> w;
  const double n = static_cast<double>(samples);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double q = prob[i];
    if (!(q > 0.0)) return {};
    x.push_back(std::log(static_cast<double>(grid[i])));
    y.push_back(std::log(q));
    // Delta method: Var(log P̂) = (1 - P) / (n P).
    w.push_back(q < 1.0 ? n * q / (1.0 - q) : n);
  }
  return {WeightedLineFit(x, y, w), true};
}

}  // namespace

std::vector<std::int64_t> DyadicGrid(int lo, int hi) {
  std::vector<std::int64_t> out;
  for (int e = lo; e <= hi; ++e) out.push_back(std::int64_t{1} << e);
  return out;
}

// ---------------------------------------------------------------------------
// Tail fits

std::vector<TailFit> FitTail(const TailEvent& event, double p,
                             std::uint64_t samples, const RunOptions& run,
                             std::uint64_t stream_tag, int bootstrap) {
  CheckP(p);
  const std::size_t n_series = event.series.size();
  for (const auto& s : event.series) CheckGrid(s.grid);
  if (samples == 0) throw std::invalid_argument("tail fit needs samples");

  struct Counts {
    std::uint64_t n = 0;
    std::vector<std::vector<std::uint64_t>> hit;
    std::vector<std::vector<std::uint64_t>> unknown;
  };
  const std::uint64_t batches = BatchCount(samples, run.batch_size);
  auto per_batch = RunBatches(batches, run.threads, [&](std::uint64_t b) {
    Counts c;
    c.n = BatchSamples(samples, run.batch_size, b);
    for (const auto& s : event.series) {
      c.hit.emplace_back(s.grid.size(), 0);
      c.unknown.emplace_back(s.grid.size(), 0);
    }
    SymbolSampler sampler(p, StreamId{run.seed, stream_tag + b});
    std::vector<TailHits> hits(n_series);
    for (std::uint64_t i = 0; i < c.n; ++i) {
      std::fill(hits.begin(), hits.end(), TailHits{});
      event.sample(sampler, hits);
      for (std::size_t s = 0; s < n_series; ++s) {
        for (std::uint64_t m = hits[s].hit; m != 0; m &= m - 1) {
          ++c.hit[s][static_cast<std::size_t>(std::countr_zero(m))];
        }
        for (std::uint64_t m = hits[s].unknown; m != 0; m &= m - 1) {
          ++c.unknown[s][static_cast<std::size_t>(std::countr_zero(m))];
        }
      }
    }
    return c;
  });

  std::vector<TailFit> fits;
  for (std::size_t s = 0; s < n_series; ++s) {
    const auto& grid = event.series[s].grid;
    const std::size_t g = grid.size();
    std::vector<std::uint64_t> hit(g, 0);
    std::vector<std::uint64_t> unk(g, 0);
    for (const Counts& c : per_batch) {
      for (std::size_t i = 0; i < g; ++i) {
        hit[i] += c.hit[s][i];
        unk[i] += c.unknown[s][i];
      }
    }
    TailFit fit;
    fit.event = event.series[s].name;
    fit.samples = samples;
    std::vector<double> prob(g);
    std::vector<double> prob_hi(g);
    for (std::size_t i = 0; i < g; ++i) {
      TailPoint pt;
      pt.n = grid[i];
      pt.probability = Proportion(hit[i], samples);
      pt.unknown_fraction =
          static_cast<double>(unk[i]) / static_cast<double>(samples);
      fit.max_unknown_fraction = std::max(fit.max_unknown_fraction, pt.unknown_fraction);
      prob[i] = pt.probability.value;
      prob_hi[i] = static_cast<double>(hit[i] + unk[i]) / static_cast<double>(samples);
      fit.points.push_back(pt);
    }
    const FitResult main = FitLogLog(grid, prob, samples);
    if (!main.ok) {
      throw std::domain_error("degenerate tail fit for " + fit.event +
                              ": a survival estimate is zero");
    }
    fit.slope = main.line.slope;
    fit.slope_se = main.line.slope_se;
    fit.exponent = -main.line.slope;
    fit.exponent_unknown_as_miss = fit.exponent;
    fit.exponent_unknown_as_hit = -FitLogLog(grid, prob_hi, samples).line.slope;

    // Batch-level bootstrap.
    Engine engine(StreamId{run.seed, kTagBootstrap + stream_tag + s});
    std::vector<double> boot;
    if (batches >= 2) {
      for (int r = 0; r < bootstrap; ++r) {
        std::vector<std::uint64_t> bh(g, 0);
        std::uint64_t bn = 0;
        for (std::uint64_t k = 0; k < batches; ++k) {
          const Counts& c = per_batch[engine() % batches];
          bn += c.n;
          for (std::size_t i = 0; i < g; ++i) bh[i] += c.hit[s][i];
        }
        std::vector<double> bp(g);
        for (std::size_t i = 0; i < g; ++i) {
          bp[i] = static_cast<double>(bh[i]) / static_cast<double>(bn);
        }
        const FitResult f = FitLogLog(grid, bp, bn);
        if (f.ok) boot.push_back(-f.line.slope);
      }
    }
    fit.bootstrap_resamples = static_cast<int>(boot.size());
    if (boot.size() >= 2) {
      fit.ci_lo = std::min(Quantile(boot, 0.025), fit.exponent);
      fit.ci_hi = std::max(Quantile(boot, 0.975), fit.exponent);
    } else {
      fit.ci_lo = fit.exponent - 1.96 * fit.slope_se;
      fit.ci_hi = fit.exponent + 1.96 * fit.slope_se;
    }
    fits.push_back(std::move(fit));
  }
  return fits;
}

TailEvent FirstOrderTailEvent(std::vector<std::int64_t> grid) {
  CheckGrid(grid);
  TailEvent ev;
  ev.series.push_back({"I>n", grid});
  ev.sample = [grid](SymbolSampler& src, std::span<TailHits> out) {
    const std::int64_t i = FirstOrderTime(src, grid.back()).value;
    out[0].hit = GridMask(grid, [i](std::int64_t n) { return i > n; });
  };
  return ev;
}

TailEvent ClearingTailEvent(std::vector<std::int64_t> grid) {
  CheckGrid(grid);
  TailEvent ev;
  ev.series.push_back({"P>n", grid});
  ev.sample = [grid](SymbolSampler& src, std::span<TailHits> out) {
    const std::int64_t t = BackwardClearingTime(src, grid.back()).value;
    out[0].hit = GridMask(grid, [t](std::int64_t n) { return t > n; });
  };
  return ev;
}

TailEvent HamburgerTailEvent(std::vector<std::int64_t> j_grid,
                             std::vector<std::int64_t> l_grid,
                             std::int64_t horizon) {
  CheckGrid(j_grid);
  CheckGrid(l_grid);
  if (horizon < j_grid.back()) {
    throw std::invalid_argument("J tail grid beyond the scan horizon");
  }
  TailEvent ev;
  ev.series.push_back({"J1>n", j_grid});
  ev.series.push_back({"L1>n", l_grid});
  ev.series.push_back({"L1<=-n", l_grid});
  ev.sample = [j_grid, l_grid, horizon](SymbolSampler& src, std::span<TailHits> out) {
    const BackwardScan scan = BackwardBurgerTimes(src, 1, horizon);
    if (scan.exhausted) {
      out[0].hit = AllBits(j_grid.size());
      out[1].unknown = out[2].unknown = AllBits(l_grid.size());
      return;
    }
    const std::int64_t j = scan.times[0].j;
    const std::int64_t l = scan.times[0].l;
    out[0].hit = GridMask(j_grid, [j](std::int64_t n) { return j > n; });
    out[1].hit = GridMask(l_grid, [l](std::int64_t n) { return l > n; });
    out[2].hit = GridMask(l_grid, [l](std::int64_t n) { return l <= -n; });
  };
  return ev;
}

TailEvent RenewalTailEvent(std::vector<std::int64_t> grid, bool literal) {
  CheckGrid(grid);
  TailEvent ev;
  ev.series.push_back({literal ? "renewal(backward)" : "renewal", grid});
  if (!literal) {
    ev.sample = [grid](SymbolSampler& src, std::span<TailHits> out) {
      const ForwardTimes t = ForwardNoBurgerTimes(src, 1, grid.back());
      const std::int64_t first = t.exhausted ? grid.back() + 1 : t.times[0];
      out[0].hit = GridMask(grid, [first](std::int64_t n) { return first > n; });
    };
    return ev;
  }
  ev.sample = [grid](SymbolSampler& src, std::span<TailHits> out) {
    // n = J_m^H iff X(-n+1,-1) holds no h or f order and X_{-n} = H.
    ReducedState state(0);
    std::size_t next = 0;
    for (std::int64_t j = 1; j <= grid.back(); ++j) {
      const Symbol s = src.Next();
      if (j == grid[next]) {
        if (s == Symbol::kBurgerH && state.count(Symbol::kOrderH) == 0 &&
            state.count(Symbol::kOrderF) == 0) {
          out[0].hit |= Bit(next);
        }
        ++next;
      }
      state.Prepend(s);
    }
  };
  return ev;
}

TailEvent IntervalTailEvent(std::int64_t n, std::vector<std::int64_t> k_grid) {
  CheckGrid(k_grid);
  if (k_grid.back() > n) throw std::invalid_argument("interval grid needs k <= n");
  TailEvent ev;
  ev.series.push_back({"interval(n=" + std::to_string(n) + ")", k_grid});
  ev.sample = [n, k_grid](SymbolSampler& src, std::span<TailHits> out) {
    const std::int64_t last = LastClearingTime(src, n);
    out[0].hit = GridMask(k_grid, [n, last](std::int64_t k) { return last >= n - k; });
  };
  return ev;
}

TailEvent SyntheticTailEvent(std::vector<std::int64_t> grid, double alpha) {
  CheckGrid(grid);
  if (!(alpha > 0.0)) throw std::invalid_argument("synthetic exponent must be positive");
  TailEvent ev;
  ev.series.push_back({"synthetic", grid});
  ev.sample = [grid, alpha](SymbolSampler& src, std::span<TailHits> out) {
    // X > n iff U < n^-alpha.
    const double u = src.engine().UniformPositive();
    out[0].hit = GridMask(grid, [u, alpha](std::int64_t n) {
      return u < std::pow(static_cast<double>(n), -alpha);
    });
  };
  return ev;
}

// ---------------------------------------------------------------------------
// Local limit

namespace {

// Integer lattice boundaries: bin i holds integers in [b[i], b[i+1]).
std::vector<std::int64_t> LatticeEdges(double lo, double hi, double width,
                                       double scale) {
  std::vector<std::int64_t> out;
  const auto nbins = static_cast<int>(std::llround((hi - lo) / width));
  for (int i = 0; i <= nbins; ++i) {
    const double edge = (lo + width * i) * scale;
    out.push_back(static_cast<std::int64_t>(std::ceil(edge - 1e-9)));
  }
  return out;
}

int FindBin(const std::vector<std::int64_t>& edges, std::int64_t x) {
  if (x < edges.front() || x >= edges.back()) return -1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  return static_cast<int>(it - edges.begin()) - 1;
}

}  // namespace

LocalLimitReport LocalLimitCheck(double p, const LocalLimitOptions& opts,
                                 const RunOptions& run) {
  CheckP(p);
  if (opts.m < 8) throw std::invalid_argument("local limit check needs m >= 8");
  const std::int64_t m = opts.m;
  const double m2 = static_cast<double>(m * m);
  const auto horizon = static_cast<std::int64_t>(std::ceil(opts.horizon_factor * m2));
  const auto t_edges = LatticeEdges(opts.t_lo, opts.t_hi, opts.t_bin, m2);
  const auto v_edges =
      LatticeEdges(-opts.v_max, opts.v_max, opts.v_bin, static_cast<double>(m));
  const std::size_t nt = t_edges.size() - 1;
  const std::size_t nv = v_edges.size() - 1;

  struct Counts {
    std::uint64_t truncated = 0;
    std::uint64_t in_window = 0;
    std::vector<std::uint64_t> bins;
  };
  const std::uint64_t batches = BatchCount(opts.samples, run.batch_size);
  auto per_batch = RunBatches(batches, run.threads, [&](std::uint64_t b) {
    Counts c;
    c.bins.assign(nt * nv, 0);
    SymbolSampler src(p, StreamId{run.seed, kTagLocalLimit + b});
    const std::uint64_t count = BatchSamples(opts.samples, run.batch_size, b);
    for (std::uint64_t i = 0; i < count; ++i) {
      const BackwardScan scan = BackwardBurgerTimes(src, m, horizon);
      if (scan.exhausted) {
        ++c.truncated;
        continue;
      }
      const int tb = FindBin(t_edges, scan.times.back().j);
      const int vb = FindBin(v_edges, scan.times.back().l);
      if (tb < 0 || vb < 0) continue;
      ++c.in_window;
      ++c.bins[static_cast<std::size_t>(tb) * nv + static_cast<std::size_t>(vb)];
    }
    return c;
  });

  LocalLimitReport rep;
  rep.options = opts;
  rep.samples = opts.samples;
  std::vector<std::uint64_t> bins(nt * nv, 0);
  for (const Counts& c : per_batch) {
    rep.truncated += c.truncated;
    rep.in_window += c.in_window;
    for (std::size_t i = 0; i < bins.size(); ++i) bins[i] += c.bins[i];
  }

  const GParams g = GParams::FromP(p);
  rep.sup_g = GSup(g);
  const double m3 = m2 * static_cast<double>(m);
  const double n = static_cast<double>(opts.samples);
  // L_m/m concentrates around +a3 while g is centered at -a3: L_m is the
  // cheeseburger discrepancy of X(-J_m,-1), and the path value at time -J_m
  // is minus that, so the matching density is g(t, -v).
  const double sign = opts.reflect_v ? -1.0 : 1.0;
  rep.min_bin_count = ~0ULL;
  for (std::size_t ti = 0; ti < nt; ++ti) {
    for (std::size_t vi = 0; vi < nv; ++vi) {
      LocalLimitBin bin;
      bin.t_lo = static_cast<double>(t_edges[ti]) / m2;
      bin.t_hi = static_cast<double>(t_edges[ti + 1]) / m2;
      bin.v_lo = static_cast<double>(v_edges[vi]) / static_cast<double>(m);
      bin.v_hi = static_cast<double>(v_edges[vi + 1]) / static_cast<double>(m);
      double model = 0.0;
      double model_other = 0.0;
      for (std::int64_t k = t_edges[ti]; k < t_edges[ti + 1]; ++k) {
        const double t = static_cast<double>(k) / m2;
        for (std::int64_t l = v_edges[vi]; l < v_edges[vi + 1]; ++l) {
          const double v = static_cast<double>(l) / static_cast<double>(m);
          model += GDensity(t, sign * v, g);
          model_other += GDensity(t, -sign * v, g);
        }
      }
      bin.lattice_points = static_cast<std::uint64_t>((t_edges[ti + 1] - t_edges[ti]) *
                                                      (v_edges[vi + 1] - v_edges[vi]));
      const double pts = static_cast<double>(bin.lattice_points);
      bin.count = bins[ti * nv + vi];
      bin.empirical = m3 * static_cast<double>(bin.count) / (n * pts);
      bin.se = m3 * std::sqrt(std::max<double>(1.0, static_cast<double>(bin.count))) / (n * pts);
      bin.model = model / pts;
      bin.model_unreflected = opts.reflect_v ? model_other / pts : bin.model;
      const double diff = std::abs(bin.empirical - bin.model);
      rep.sup_discrepancy = std::max(rep.sup_discrepancy, diff);
      rep.sup_discrepancy_unreflected = std::max(
          rep.sup_discrepancy_unreflected, std::abs(bin.empirical - bin.model_unreflected));
      rep.l1_discrepancy += diff * pts / m3;
      rep.min_bin_count = std::min(rep.min_bin_count, bin.count);
      if (bin.empirical > rep.mode_empirical) {
        rep.mode_empirical = bin.empirical;
        rep.mode_model = bin.model;
      }
      rep.bins.push_back(bin);
    }
  }
  rep.low_count_warning = rep.min_bin_count < 25;
  return rep;
}

// ---------------------------------------------------------------------------
// Exact-vs-Monte Carlo

McVsExactReport McVsExact(double p, std::int64_t n, std::int64_t h,
                          std::int64_t c, std::uint64_t samples,
                          const RunOptions& run) {
  CheckP(p);
  if (n < 1) throw std::invalid_argument("n must be positive");
  struct Counts {
    std::uint64_t survive = 0, event = 0, empty = 0;
  };
  const std::uint64_t batches = BatchCount(samples, run.batch_size);
  // Read n symbols with early abort, keeping the stack to classify the endpoint.
  auto per_batch = RunBatches(batches, run.threads, [&](std::uint64_t b) {
    Counts k;
    SymbolSampler src(p, StreamId{run.seed, kTagMcExact + b});
    ReducedState state(1);
    const std::uint64_t count = BatchSamples(samples, run.batch_size, b);
    for (std::uint64_t i = 0; i < count; ++i) {
      state.Reset(1);
      bool alive = true;
      for (std::int64_t j = 1; j <= n; ++j) {
        const Symbol s = src.Next();
        if (!state.Append(s) && IsOrder(s)) {
          alive = false;
          break;
        }
      }
      if (!alive) continue;
      ++k.survive;
      const auto nh = static_cast<std::int64_t>(state.count(Symbol::kBurgerH));
      const auto nc = static_cast<std::int64_t>(state.count(Symbol::kBurgerC));
      if (nh == h && nc == c) ++k.event;
      if (nh == 0 && nc == 0) ++k.empty;
    }
    return k;
  });
  Counts total;
  for (const Counts& k : per_batch) {
    total.survive += k.survive;
    total.event += k.event;
    total.empty += k.empty;
  }
  const NoOrderTable table = ExactNoOrderTable(n, p);
  McVsExactReport rep;
  rep.n = n;
  rep.samples = samples;
  auto row = [&](std::string name, std::uint64_t hits, double exact) {
    ExactComparison r;
    r.quantity = std::move(name);
    r.mc = Proportion(hits, samples);
    r.exact = exact;
    r.sigma = SigmaDistance(r.mc, exact);
    rep.rows.push_back(r);
  };
  const std::string ns = std::to_string(n);
  row("P(I>" + ns + ")", total.survive, table.survival);
  row("P(E_" + ns + "^{" + std::to_string(h) + "," + std::to_string(c) + "})",
      total.event, table.at(h, c));
  if (n % 2 == 0) row("P(X(1," + ns + ")=empty)", total.empty, table.at(0, 0));
  return rep;
}

EmptyWordReport EmptyWordExperiment(double p, std::int64_t dp_limit,
                                    std::vector<std::int64_t> mc_two_n,
                                    std::uint64_t samples, const RunOptions& run) {
  CheckP(p);
  EmptyWordReport rep;
  rep.exact = ExactEmptyProbTable(dp_limit, p, std::max(dp_limit, kDefaultDpLimit),
                                  kDefaultMemoryBudget, run.threads);
  for (std::size_t i = 1; i < rep.exact.size(); ++i) {
    const auto [n0, p0] = rep.exact[i - 1];
    const auto [n1, p1] = rep.exact[i];
    rep.local_slopes.emplace_back(
        n1, std::log(p1 / p0) / std::log(static_cast<double>(n1) / static_cast<double>(n0)));
  }
  rep.slopes_strictly_decreasing = true;
  for (std::size_t i = 1; i < rep.local_slopes.size(); ++i) {
    if (!(rep.local_slopes[i].second < rep.local_slopes[i - 1].second)) {
      rep.slopes_strictly_decreasing = false;
    }
  }
  if (!rep.local_slopes.empty()) rep.final_slope = rep.local_slopes.back().second;
  rep.target_exponent = -(1.0 + 2.0 * MuFromP(p));

  std::sort(mc_two_n.begin(), mc_two_n.end());
  mc_two_n.erase(std::unique(mc_two_n.begin(), mc_two_n.end()), mc_two_n.end());
  if (mc_two_n.empty() || samples == 0) return rep;
  for (std::int64_t v : mc_two_n) {
    if (v <= 0 || v % 2 != 0) throw std::invalid_argument("empty-word lengths must be even");
  }
  const std::int64_t longest = mc_two_n.back();
  const std::uint64_t batches = BatchCount(samples, run.batch_size);
  auto per_batch = RunBatches(batches, run.threads, [&](std::uint64_t b) {
    std::vector<std::uint64_t> hits(mc_two_n.size(), 0);
    SymbolSampler src(p, StreamId{run.seed, kTagEmpty + b});
    ReducedState state(1);
    const std::uint64_t count = BatchSamples(samples, run.batch_size, b);
    for (std::uint64_t i = 0; i < count; ++i) {
      state.Reset(1);
      std::size_t next = 0;
      for (std::int64_t j = 1; j <= longest; ++j) {
        const Symbol s = src.Next();
        if (!state.Append(s) && IsOrder(s)) break;  // an order survives forever
        if (j == mc_two_n[next]) {
          if (state.empty()) ++hits[next];
          ++next;
        }
      }
    }
    return hits;
  });
  rep.mc_samples = samples;
  for (std::size_t k = 0; k < mc_two_n.size(); ++k) {
    std::uint64_t hits = 0;
    for (const auto& h : per_batch) hits += h[k];
    const double exact = ExactEmptyProb(mc_two_n[k], p,
                                        std::max(mc_two_n[k], kDefaultDpLimit));
    ExactComparison r;
    r.quantity = "P(X(1," + std::to_string(mc_two_n[k]) + ")=empty)";
    r.mc = Proportion(hits, samples);
    r.exact = exact;
    r.sigma = SigmaDistance(r.mc, exact);
    rep.mc.push_back(r);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Conditioned paths

namespace {

// Sup over lattice midpoints (k + 1/2) * scale of |F_a - F_b|.
double LatticeKs(std::vector<double> a, std::vector<double> b, double scale) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double lo = std::min(a.front(), b.front());
  const double hi = std::max(a.back(), b.back());
  const auto k0 = static_cast<std::int64_t>(std::floor(lo / scale)) - 1;
  const auto k1 = static_cast<std::int64_t>(std::ceil(hi / scale)) + 1;
  double d = 0.0;
  for (std::int64_t k = k0; k <= k1; ++k) {
    const double x = (static_cast<double>(k) + 0.5) * scale;
    const double fa = static_cast<double>(std::upper_bound(a.begin(), a.end(), x) - a.begin()) /
                      static_cast<double>(a.size());
    const double fb = static_cast<double>(std::upper_bound(b.begin(), b.end(), x) - b.begin()) /
                      static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

}  // namespace

PathCompareReport ConditionedPathCompare(double p, const ConditionedOptions& opts,
                                         const RunOptions& run) {
  CheckP(p);
  if (opts.n < 1 || opts.h < 1 || opts.c < 1 || opts.window < 0) {
    throw std::invalid_argument("conditioned comparison needs n, h, c >= 1");
  }
  if (opts.per_batch == 0) throw std::invalid_argument("per_batch must be positive");
  const std::int64_t n = opts.n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::int64_t> slice_steps;
  for (double t : opts.slices) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("slices must lie in (0, 1)");
    slice_steps.push_back(std::llround(t * static_cast<double>(n)));
  }
  const std::size_t ns = slice_steps.size();

  struct Walks {
    std::uint64_t attempts = 0;
    std::vector<double> u;  // accepted x slice, row-major
    std::vector<double> v;
    bool quadrant_ok = true;
    bool window_ok = true;
  };
  const std::uint64_t walk_batches = BatchCount(opts.walk_samples, opts.per_batch);
  const std::uint64_t attempt_budget =
      std::max<std::uint64_t>(1, opts.max_attempts / std::max<std::uint64_t>(1, walk_batches));
  auto walks = RunBatches(walk_batches, run.threads, [&](std::uint64_t b) {
    Walks w;
    SymbolSampler src(p, StreamId{run.seed, kTagWalks + b});
    const std::uint64_t want = BatchSamples(opts.walk_samples, opts.per_batch, b);
    ReducedState state(1);
    Word word{std::vector<Symbol>(static_cast<std::size_t>(n)), 1};
    std::vector<double> su(ns);
    std::vector<double> sv(ns);
    std::uint64_t got = 0;
    while (got < want) {
      if (w.attempts == attempt_budget) {
        throw AttemptsExhaustedError(static_cast<std::int64_t>(w.attempts),
                                     static_cast<std::int64_t>(got));
      }
      ++w.attempts;
      state.Reset(1);
      bool alive = true;
      std::size_t next = 0;
      for (std::int64_t j = 1; j <= n; ++j) {
        const Symbol s = src.Next();
        word.symbols[static_cast<std::size_t>(j - 1)] = s;
        if (!state.Append(s) && IsOrder(s)) {
          alive = false;
          break;
        }
        while (next < ns && slice_steps[next] == j) {
          su[next] = scale * static_cast<double>(state.count(Symbol::kBurgerH));
          sv[next] = scale * static_cast<double>(state.count(Symbol::kBurgerC));
          ++next;
        }
      }
      if (!alive) continue;
      const auto eh = static_cast<std::int64_t>(state.count(Symbol::kBurgerH));
      const auto ec = static_cast<std::int64_t>(state.count(Symbol::kBurgerC));
      if (std::abs(eh - opts.h) > opts.window || std::abs(ec - opts.c) > opts.window) {
        continue;
      }
      // Re-derive the acceptance from the word: event predicate and the
      // quadrant/endpoint description of the rescaled path must agree.
      const DiscretePath path(ResolveFlexInWindow(word));
      w.quadrant_ok = w.quadrant_ok && NoOrderEvent(word, n, eh, ec) &&
                      QuadrantEndpointEvent(path, n, eh, ec);
      w.window_ok = w.window_ok && std::abs(path.d(n) - opts.h) <= opts.window &&
                    std::abs(path.d_star(n) - opts.c) <= opts.window;
      w.u.insert(w.u.end(), su.begin(), su.end());
      w.v.insert(w.v.end(), sv.begin(), sv.end());
      ++got;
    }
    return w;
  });

  struct Bridges {
    std::uint64_t attempts = 0;
    std::vector<double> u;
    std::vector<double> v;
  };
  const CovSpec spec = CovSpec::FromP(p);
  BridgeOptions bopts;
  bopts.dt = opts.bm_dt;
  bopts.crossing_correction = opts.crossing_correction;
  const std::uint64_t bm_batches = BatchCount(opts.bm_samples, opts.per_batch);
  bopts.max_attempts = static_cast<std::int64_t>(std::min<std::uint64_t>(
      opts.max_attempts / std::max<std::uint64_t>(1, bm_batches),
      static_cast<std::uint64_t>(INT64_MAX)));
  auto bridges = RunBatches(bm_batches, run.threads, [&](std::uint64_t b) {
    Bridges br;
    Engine engine(StreamId{run.seed, kTagBridges + b});
    Gaussian normal(engine);
    const std::uint64_t want = BatchSamples(opts.bm_samples, opts.per_batch, b);
    for (std::uint64_t i = 0; i < want; ++i) {
      const BridgeSample s =
          SampleQuadrantBridge(spec, 0.0, 0.0, scale * static_cast<double>(opts.h),
                               scale * static_cast<double>(opts.c), 1.0, bopts, normal);
      br.attempts += static_cast<std::uint64_t>(s.attempts);
      for (double t : opts.slices) {
        const auto idx = static_cast<std::size_t>(std::llround(t / s.path.dt));
        br.u.push_back(s.path.u[idx]);
        br.v.push_back(s.path.v[idx]);
      }
    }
    return br;
  });

  PathCompareReport rep;
  rep.options = opts;
  rep.all_walks_in_quadrant = true;
  rep.all_walks_in_window = true;
  std::vector<std::vector<double>> wu(ns), wv(ns), bu(ns), bv(ns);
  for (const Walks& w : walks) {
    rep.walk_attempts += w.attempts;
    rep.all_walks_in_quadrant = rep.all_walks_in_quadrant && w.quadrant_ok;
    rep.all_walks_in_window = rep.all_walks_in_window && w.window_ok;
    for (std::size_t i = 0; i < w.u.size(); ++i) {
      wu[i % ns].push_back(w.u[i]);
      wv[i % ns].push_back(w.v[i]);
    }
  }
  for (const Bridges& br : bridges) {
    rep.bm_attempts += br.attempts;
    for (std::size_t i = 0; i < br.u.size(); ++i) {
      bu[i % ns].push_back(br.u[i]);
      bv[i % ns].push_back(br.v[i]);
    }
  }
  rep.walk_samples = wu.empty() ? 0 : wu[0].size();
  rep.bm_samples = bu.empty() ? 0 : bu[0].size();
  for (std::size_t k = 0; k < ns && rep.walk_samples > 0 && rep.bm_samples > 0; ++k) {
    SliceKs sk;
    sk.t = opts.slices[k];
    sk.ks_u = KsTwoSample(wu[k], bu[k]);
    sk.ks_v = KsTwoSample(wv[k], bv[k]);
    sk.ks_u_lattice = LatticeKs(wu[k], bu[k], scale);
    sk.ks_v_lattice = LatticeKs(wv[k], bv[k], scale);
    sk.critical = KsCritical(wu[k].size(), bu[k].size());
    rep.slices.push_back(sk);
  }
  return rep;
}

EndpointLawReport ConditionedEndpointLaw(double p, std::int64_t n,
                                         std::uint64_t attempts,
                                         const RunOptions& run) {
  CheckP(p);
  using Cell = std::pair<std::int64_t, std::int64_t>;
  struct Counts {
    std::uint64_t accepted = 0;
    std::map<Cell, std::uint64_t> cells;
  };
  const std::uint64_t batches = BatchCount(attempts, run.batch_size);
  auto per_batch = RunBatches(batches, run.threads, [&](std::uint64_t b) {
    Counts k;
    SymbolSampler src(p, StreamId{run.seed, kTagEndpoint + b});
    ReducedState state(1);
    const std::uint64_t count = BatchSamples(attempts, run.batch_size, b);
    for (std::uint64_t i = 0; i < count; ++i) {
      state.Reset(1);
      bool alive = true;
      for (std::int64_t j = 1; j <= n && alive; ++j) {
        const Symbol s = src.Next();
        alive = state.Append(s) || !IsOrder(s);
      }
      if (!alive) continue;
      ++k.accepted;
      ++k.cells[{static_cast<std::int64_t>(state.count(Symbol::kBurgerH)),
                 static_cast<std::int64_t>(state.count(Symbol::kBurgerC))}];
    }
    return k;
  });
  std::map<Cell, std::uint64_t> cells;
  EndpointLawReport rep;
  rep.n = n;
  rep.attempts = attempts;
  for (const Counts& k : per_batch) {
    rep.accepted += k.accepted;
    for (const auto& [cell, cnt] : k.cells) cells[cell] += cnt;
  }
  const NoOrderTable table = ExactNoOrderTable(n, p);
  std::map<Cell, double> exact;
  for (const auto& [cell, prob] : table.prob) exact[cell] = prob / table.survival;
  for (const auto& [cell, cnt] : cells) exact.emplace(cell, 0.0);
  const double acc = static_cast<double>(rep.accepted);
  for (const auto& [cell, q] : exact) {
    EndpointCell ec;
    ec.h = cell.first;
    ec.c = cell.second;
    const auto it = cells.find(cell);
    const std::uint64_t cnt = it == cells.end() ? 0 : it->second;
    ec.mc = Proportion(cnt, rep.accepted);
    ec.exact = q;
    // Binomial SE under the exact law; cells the DP rules out must be empty.
    const double se = std::sqrt(q * (1.0 - q) / acc);
    ec.sigma = se > 0.0 ? std::abs(ec.mc.value - q) / se
                        : (cnt == 0 ? 0.0 : std::numeric_limits<double>::infinity());
    rep.max_sigma = std::max(rep.max_sigma, ec.sigma);
    rep.cells.push_back(ec);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Flexible orders

FlexReport FlexibleOrderDiagnostic(double p, std::vector<std::int64_t> grid,
                                   std::vector<double> nus, std::uint64_t samples,
                                   const RunOptions& run) {
  CheckP(p);
  CheckGrid(grid);
  const std::size_t g = grid.size();
  const std::size_t k = nus.size();
  struct Sums {
    std::vector<double> f, ff, h, hh;
    std::vector<std::uint64_t> viol;  // g x k
    bool bound = true;
  };
  const std::uint64_t batches = BatchCount(samples, run.batch_size);
  auto per_batch = RunBatches(batches, run.threads, [&](std::uint64_t b) {
    Sums s;
    s.f.assign(g, 0.0);
    s.ff.assign(g, 0.0);
    s.h.assign(g, 0.0);
    s.hh.assign(g, 0.0);
    s.viol.assign(g * k, 0);
    SymbolSampler src(p, StreamId{run.seed, kTagFlex + b});
    ReducedState state(1);
    const std::uint64_t count = BatchSamples(samples, run.batch_size, b);
    for (std::uint64_t i = 0; i < count; ++i) {
      state.Reset(1);
      std::size_t next = 0;
      for (std::int64_t j = 1; j <= grid.back(); ++j) {
        state.Append(src.Next());
        if (j != grid[next]) continue;
        const auto nf = static_cast<double>(state.count(Symbol::kOrderF));
        const auto nh = static_cast<double>(state.count(Symbol::kOrderH));
        s.bound = s.bound && nf <= static_cast<double>(state.num_orders());
        s.f[next] += nf;
        s.ff[next] += nf * nf;
        s.h[next] += nh;
        s.hh[next] += nh * nh;
        for (std::size_t q = 0; q < k; ++q) {
          if (nf > std::pow(nh, nus[q])) ++s.viol[next * k + q];
        }
        ++next;
      }
    }
    return s;
  });
  FlexReport rep;
  rep.nus = nus;
  rep.samples = samples;
  const double n = static_cast<double>(samples);
  std::vector<double> mf(g), mh(g), xs(g), wf(g), wh(g), yf(g), yh(g);
  for (std::size_t i = 0; i < g; ++i) {
    double f = 0, ff = 0, h = 0, hh = 0;
    std::vector<std::uint64_t> viol(k, 0);
    for (const Sums& s : per_batch) {
      f += s.f[i];
      ff += s.ff[i];
      h += s.h[i];
      hh += s.hh[i];
      for (std::size_t q = 0; q < k; ++q) viol[q] += s.viol[i * k + q];
      rep.total_order_bound_holds = rep.total_order_bound_holds && s.bound;
    }
    FlexPoint pt;
    pt.n = grid[i];
    pt.mean_flex = {f / n, std::sqrt(std::max(0.0, ff / n - (f / n) * (f / n)) / n)};
    pt.mean_ham_orders = {h / n, std::sqrt(std::max(0.0, hh / n - (h / n) * (h / n)) / n)};
    for (std::size_t q = 0; q < k; ++q) pt.violation.push_back(Proportion(viol[q], samples));
    xs[i] = std::log(static_cast<double>(grid[i]));
    yf[i] = std::log(std::max(pt.mean_flex.value, 1e-300));
    yh[i] = std::log(std::max(pt.mean_ham_orders.value, 1e-300));
    wf[i] = pt.mean_flex.se > 0 ? std::pow(pt.mean_flex.value / pt.mean_flex.se, 2) : 1.0;
    wh[i] = pt.mean_ham_orders.se > 0
                ? std::pow(pt.mean_ham_orders.value / pt.mean_ham_orders.se, 2)
                : 1.0;
    rep.points.push_back(pt);
  }
  if (g >= 2) {
    rep.flex_growth_exponent = WeightedLineFit(xs, yf, wf).slope;
    rep.ham_growth_exponent = WeightedLineFit(xs, yh, wh).slope;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Path covariance

CovarianceReport PathCovariance(double p, std::int64_t n, std::uint64_t samples,
                                std::int64_t flex_cap, const RunOptions& run) {
  CheckP(p);
  if (n < 1) throw std::invalid_argument("n must be positive");
  struct Part {
    PairMoments moments;
    std::uint64_t unresolved = 0;
    std::int64_t max_extension = 0;
  };
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const std::uint64_t batches = BatchCount(samples, run.batch_size);
  auto per_batch = RunBatches(batches, run.threads, [&](std::uint64_t b) {
    Part part;
    SymbolSampler src(p, StreamId{run.seed, kTagCovariance + b});
    Word word{std::vector<Symbol>(static_cast<std::size_t>(n)), 1};
    const std::uint64_t count = BatchSamples(samples, run.batch_size, b);
    for (std::uint64_t i = 0; i < count; ++i) {
      for (auto& s : word.symbols) s = src.Next();
      try {
        // The extension X_0, X_-1, ... continues the same i.i.d. stream.
        const FlexResolution res = ResolveFlex(word, src, flex_cap);
        part.max_extension = std::max(part.max_extension, res.extension_used);
        std::int64_t d = 0;
        std::int64_t ds = 0;
        for (Symbol s : res.y_word.symbols) {
          switch (s) {
            case Symbol::kBurgerH: ++d; break;
            case Symbol::kOrderH: --d; break;
            case Symbol::kBurgerC: ++ds; break;
            case Symbol::kOrderC: --ds; break;
            case Symbol::kOrderF: throw std::logic_error("flexible order left in a Y-word");
          }
        }
        part.moments.Add(scale * static_cast<double>(d), scale * static_cast<double>(ds));
      } catch (const UnresolvedFlexError&) {
        ++part.unresolved;
      }
    }
    return part;
  });
  CovarianceReport rep;
  rep.n = n;
  rep.samples = samples;
  PairMoments all;
  for (const Part& part : per_batch) {
    all.Merge(part.moments);
    rep.unresolved += part.unresolved;
    rep.max_extension = std::max(rep.max_extension, part.max_extension);
  }
  if (all.count() < 2) throw std::domain_error("too few resolved samples");
  rep.var_u = {all.var_x(), all.var_x_se()};
  rep.cov = {all.cov(), all.cov_se()};
  const CovSpec spec = CovSpec::FromP(p);
  rep.expected_var = spec.var;
  rep.expected_cov = spec.cov;
  return rep;
}

// ---------------------------------------------------------------------------
// Brownian reference checks

FirstPassageReport FirstPassageCheck(double p, std::uint64_t samples, double dt,
                                     double t_max, const RunOptions& run) {
  const CovSpec spec = CovSpec::FromP(p);
  struct Part {
    std::vector<double> tau;
    std::vector<double> v;
  };
  const std::uint64_t batches = BatchCount(samples, run.batch_size);
  auto per_batch = RunBatches(batches, run.threads, [&](std::uint64_t b) {
    Part part;
    Engine engine(StreamId{run.seed, kTagFirstPassage + b});
    Gaussian normal(engine);
    const std::uint64_t count = BatchSamples(samples, run.batch_size, b);
    for (std::uint64_t i = 0; i < count; ++i) {
      const FirstPassageSample s = SampleFirstPassagePair(spec, dt, t_max, normal);
      if (s.censored) continue;
      part.tau.push_back(s.tau);
      part.v.push_back(s.v);
    }
    return part;
  });
  std::vector<double> tau;
  std::vector<double> v;
  for (const Part& part : per_batch) {
    tau.insert(tau.end(), part.tau.begin(), part.tau.end());
    v.insert(v.end(), part.v.begin(), part.v.end());
  }
  FirstPassageReport rep;
  rep.samples = samples;
  rep.dt = dt;
  rep.t_max = t_max;
  rep.g = GParams::FromP(p);
  const GParams g = rep.g;
  rep.censored_fraction =
      1.0 - static_cast<double>(tau.size()) / static_cast<double>(samples);
  rep.censored_expected = 1.0 - GTimeCdf(t_max, g);
  rep.ks_tau = KsSubDistribution(tau, samples, [&](double t) { return GTimeCdf(t, g); },
                                 t_max);
  // Tabulate P(tau <= t_max, V <= x) once and interpolate.
  constexpr double kLo = -10.0;
  constexpr double kHi = 10.0;
  constexpr int kSteps = 8000;
  std::vector<double> table(kSteps + 1);
  const double step = (kHi - kLo) / kSteps;
  for (int i = 0; i <= kSteps; ++i) table[static_cast<std::size_t>(i)] = GJointCdf(t_max, kLo + step * i, g);
  auto sub_cdf = [&](double x) {
    if (x <= kLo) return 0.0;
    if (x >= kHi) return table.back();
    const double pos = (x - kLo) / step;
    const auto i = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * table[i] + w * table[std::min(i + 1, table.size() - 1)];
  };
  rep.ks_v = KsSubDistribution(v, samples, sub_cdf, std::numeric_limits<double>::infinity());
  // Total mass of g by nested quadrature, independent of the closed forms.
  // Outer variable y = t^-1/2 turns the t^-3/2 tail into a Gaussian-type
  // decay; the inner range covers +-14 conditional standard deviations.
  using boost::math::quadrature::gauss_kronrod;
  rep.g_total_mass = gauss_kronrod<double, 61>::integrate(
      [&](double y) {
        if (!(y > 0.0)) return 0.0;
        const double t = 1.0 / (y * y);
        const double sd = std::sqrt(t / (2.0 * g.a2));
        const double inner = gauss_kronrod<double, 61>::integrate(
            [&](double x) { return GDensity(t, x, g); }, -g.a3 - 14.0 * sd,
            -g.a3 + 14.0 * sd, 10, 1e-13);
        return inner * 2.0 / (y * y * y);
      },
      0.0, std::numeric_limits<double>::infinity(), 15, 1e-13);
  return rep;
}

namespace {

// Integral of exp(-u^2/2t)/sqrt(t(1-t)) over [a, b] in (0,1), by t = sin^2 x.
double ShapeIntegral(double u, double a, double b) {
  const double xa = std::asin(std::sqrt(a));
  const double xb = std::asin(std::sqrt(b));
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [u](double x) {
        const double s = std::sin(x);
        if (s <= 0.0) return 0.0;
        return 2.0 * std::exp(-u * u / (2.0 * s * s));
      },
      xa, xb, 10, 1e-12);
}

}  // namespace

LastExitReport LastExitCheck(std::vector<double> levels, std::uint64_t paths,
                             double dt, int bins, const RunOptions& run) {
  if (levels.empty() || bins < 2 || !(dt > 0.0) || paths == 0) {
    throw std::invalid_argument("bad last-exit configuration");
  }
  const std::size_t nl = levels.size();
  const auto steps = static_cast<std::int64_t>(std::llround(1.0 / dt));
  const double h = 1.0 / static_cast<double>(steps);
  struct Part {
    std::vector<std::uint64_t> hist;  // nl x bins
    std::vector<std::uint64_t> positive;
  };
  const auto nb = static_cast<std::size_t>(bins);
  const std::uint64_t batches = BatchCount(paths, run.batch_size);
  auto per_batch = RunBatches(batches, run.threads, [&](std::uint64_t b) {
    Part part;
    part.hist.assign(nl * nb, 0);
    part.positive.assign(nl, 0);
    Engine engine(StreamId{run.seed, kTagLastExit + b});
    Gaussian normal(engine);
    const double sd = std::sqrt(h);
    std::vector<std::int64_t> last(nl);
    std::vector<double> below(nl);
    std::vector<double> after(nl);
    const std::uint64_t count = BatchSamples(paths, run.batch_size, b);
    for (std::uint64_t i = 0; i < count; ++i) {
      // x_0 = 0; last[k] is the last grid index with x <= u_k (or -1).
      double x = 0.0;
      for (std::size_t k = 0; k < nl; ++k) {
        last[k] = x <= levels[k] ? 0 : -1;
        below[k] = x;
      }
      for (std::int64_t j = 1; j <= steps; ++j) {
        const double nx = x + sd * normal();
        for (std::size_t k = 0; k < nl; ++k) {
          if (last[k] == j - 1) after[k] = nx;
          if (nx <= levels[k]) {
            last[k] = j;
            below[k] = nx;
          }
        }
        x = nx;
      }
      for (std::size_t k = 0; k < nl; ++k) {
        // Ending above u means tau_u > 0 for u >= 0, even when the grid
        // path never returns to u (then tau_u < dt).
        if (last[k] == steps || last[k] < 0) continue;
        const double w = (levels[k] - below[k]) / (after[k] - below[k]);
        const double t = (static_cast<double>(last[k]) + w) * h;
        ++part.positive[k];
        const auto bin = std::min(nb - 1, static_cast<std::size_t>(t * static_cast<double>(nb)));
        ++part.hist[k * nb + bin];
      }
    }
    return part;
  });

  LastExitReport rep;
  rep.paths = paths;
  rep.dt = h;
  const double n = static_cast<double>(paths);
  const double width = 1.0 / static_cast<double>(nb);
  std::ostringstream concl;
  for (std::size_t k = 0; k < nl; ++k) {
    LastExitLevel lv;
    lv.u = levels[k];
    std::uint64_t pos = 0;
    std::vector<std::uint64_t> hist(nb, 0);
    for (const Part& part : per_batch) {
      pos += part.positive[k];
      for (std::size_t i = 0; i < nb; ++i) hist[i] += part.hist[k * nb + i];
    }
    double shape_mass = 0.0;
    for (std::size_t i = 0; i <= nb; ++i) lv.bin_edges.push_back(width * static_cast<double>(i));
    for (std::size_t i = 0; i < nb; ++i) {
      const double dens = static_cast<double>(hist[i]) / (n * width);
      const double se = std::sqrt(std::max<double>(1.0, static_cast<double>(hist[i]))) / (n * width);
      const double shape = ShapeIntegral(lv.u, lv.bin_edges[i], lv.bin_edges[i + 1]) / width;
      lv.density.push_back(dens);
      lv.density_se.push_back(se);
      lv.shape.push_back(shape);
      shape_mass += shape * width;
    }
    lv.shape_correlation = PearsonCorrelation(lv.density, lv.shape);
    // Poisson maximum likelihood for norm * shape: total count over n times
    // the shape mass.
    lv.fitted_norm = {static_cast<double>(pos) / (n * shape_mass),
                      std::sqrt(static_cast<double>(std::max<std::uint64_t>(pos, 1))) /
                          (n * shape_mass)};
    lv.positive_fraction = Proportion(pos, paths);
    lv.expected_positive = 0.5 * std::erfc(lv.u / std::sqrt(2.0));
    const double total_shape = ShapeIntegral(lv.u, 0.0, 1.0);
    lv.stated_mass = kLastExitStatedNorm * total_shape;
    lv.halved_mass = kLastExitFittedNorm * total_shape;
    lv.sigma_stated = SigmaDistance(lv.positive_fraction, lv.stated_mass);
    lv.sigma_halved = SigmaDistance(lv.positive_fraction, lv.halved_mass);
    concl << "u=" << lv.u << ": fitted norm " << lv.fitted_norm.value << " +- "
          << lv.fitted_norm.se << " (1/pi = " << kLastExitStatedNorm
          << ", 1/(2pi) = " << kLastExitFittedNorm << "); P(tau_u > 0) = "
          << lv.positive_fraction.value << " vs 1/pi-mass " << lv.stated_mass
          << " (" << lv.sigma_stated << " sigma) and 1/(2pi)-mass " << lv.halved_mass
          << " (" << lv.sigma_halved << " sigma). ";
    rep.levels.push_back(std::move(lv));
  }
  bool halved_wins = true;
  for (const auto& lv : rep.levels) {
    const double to_half = std::abs(lv.fitted_norm.value - kLastExitFittedNorm);
    const double to_stated = std::abs(lv.fitted_norm.value - kLastExitStatedNorm);
    halved_wins = halved_wins && to_half < to_stated;
  }
  concl << (halved_wins
                ? "Conclusion: the density of tau_u on {tau_u > 0} is "
                  "exp(-u^2/2t)/(2 pi sqrt(t(1-t))); the 1/pi form integrates to "
                  "2 P(B(1) > u) and overstates it by a factor 2."
                : "Conclusion: the simulation does not favour 1/(2 pi) over 1/pi.");
  rep.conclusion = concl.str();
  return rep;
}

CorrelatedLastExitReport CorrelatedLastExitCheck(double p, double u,
                                                 std::uint64_t paths, double dt,
                                                 const RunOptions& run) {
  const CovSpec spec = CovSpec::FromP(p);
  const auto steps = static_cast<std::int64_t>(std::llround(1.0 / dt));
  const double h = 1.0 / static_cast<double>(steps);
  constexpr std::size_t kTb = 20;
  constexpr std::size_t kVb = 24;
  const double v_mid = spec.alpha * u;
  const double v_half = 4.0 * std::sqrt(spec.resid_var);
  const double v_lo = v_mid - v_half;
  const double v_w = 2.0 * v_half / kVb;
  const double t_w = 1.0 / kTb;
  struct Part {
    std::vector<std::uint64_t> hist;
    std::uint64_t positive = 0;
  };
  const std::uint64_t batches = BatchCount(paths, run.batch_size);
  auto per_batch = RunBatches(batches, run.threads, [&](std::uint64_t b) {
    Part part;
    part.hist.assign(kTb * kVb, 0);
    Engine engine(StreamId{run.seed, kTagCorrLastExit + b});
    Gaussian normal(engine);
    const std::uint64_t count = BatchSamples(paths, run.batch_size, b);
    for (std::uint64_t i = 0; i < count; ++i) {
      const GridPath path = SampleBm(spec, 1.0, h, normal);
      const LastExit ex = FindLastExit(path.u, h, u);
      if (ex.segment < 0 || !(ex.t > 0.0)) continue;
      ++part.positive;
      const auto s = static_cast<std::size_t>(ex.segment);
      const double w = ex.t / h - static_cast<double>(ex.segment);
      const double v = (1.0 - w) * path.v[s] + w * path.v[s + 1];
      const auto tb = std::min(kTb - 1, static_cast<std::size_t>(ex.t / t_w));
      const double vpos = (v - v_lo) / v_w;
      if (vpos < 0.0 || vpos >= static_cast<double>(kVb)) continue;
      ++part.hist[tb * kVb + static_cast<std::size_t>(vpos)];
    }
    return part;
  });
  std::vector<std::uint64_t> hist(kTb * kVb, 0);
  CorrelatedLastExitReport rep;
  rep.p = p;
  rep.u = u;
  rep.paths = paths;
  rep.dt = h;
  for (const Part& part : per_batch) {
    rep.positive += part.positive;
    for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += part.hist[i];
  }
  // Bin averages of the unit-norm density, midpoint rule in x with t = sin^2 x
  // (absorbs the 1/sqrt(1-t) edge) and in v.
  const CorrelatedLastExitParams unit = CorrelatedLastExitParams::FromP(p, 1.0);
  std::vector<double> dens;
  std::vector<double> model;
  const double n = static_cast<double>(paths);
  constexpr int kSub = 16;
  for (std::size_t ti = 0; ti < kTb; ++ti) {
    const double xa = std::asin(std::sqrt(t_w * static_cast<double>(ti)));
    const double xb = std::asin(std::sqrt(t_w * static_cast<double>(ti + 1)));
    for (std::size_t vi = 0; vi < kVb; ++vi) {
      double acc = 0.0;
      for (int a = 0; a < kSub; ++a) {
        const double x = xa + (xb - xa) * (a + 0.5) / kSub;
        const double t = std::sin(x) * std::sin(x);
        const double jac = 2.0 * std::sin(x) * std::cos(x) * (xb - xa) / kSub;
        for (int c = 0; c < kSub; ++c) {
          const double v = v_lo + v_w * (static_cast<double>(vi) + (c + 0.5) / kSub);
          acc += CorrelatedLastExitDensity(u, v, t, 1.0, unit) * jac * v_w / kSub;
        }
      }
      const double area = t_w * v_w;
      model.push_back(acc / area);
      const double cnt = static_cast<double>(hist[ti * kVb + vi]);
      dens.push_back(cnt / (n * area));
    }
  }
  rep.shape_correlation = PearsonCorrelation(dens, model);
  // Poisson maximum likelihood over the binned window.
  double counted = 0.0;
  double model_mass = 0.0;
  for (std::size_t i = 0; i < dens.size(); ++i) {
    counted += static_cast<double>(hist[i]);
    model_mass += model[i] * t_w * v_w;
  }
  rep.fitted_norm = {counted / (n * model_mass),
                     std::sqrt(std::max(1.0, counted)) / (n * model_mass)};
  return rep;
}

}  // namespace burger
