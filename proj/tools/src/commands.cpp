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

#include "burger/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "burger/brownian.hpp"
#include "burger/estimators.hpp"
#include "burger/exact_oracle.hpp"
#include "burger/model.hpp"
#include "burger/path.hpp"
#include "burger/reduced_state.hpp"
#include "burger/stopping_times.hpp"

namespace burger::cli {

namespace {

using nlohmann::json;

// States lighter than this are dropped by the lossy oracle.
constexpr double kLossyThreshold = 1e-15;

std::string Num(double x) { return FormatDouble(x); }
std::string Num(std::int64_t x) { return std::to_string(x); }
std::string Num(std::uint64_t x) { return std::to_string(x); }
std::string Num(int x) { return std::to_string(x); }

// "a=1;b=2"
template <class... Args>
std::string Params(const Args&... kv) {
  std::string out;
  auto add = [&out](const auto& pair) {
    if (!out.empty()) out += ';';
    out += pair.first + "=" + Num(pair.second);
  };
  (add(kv), ...);
  return out;
}

template <class T>
std::pair<std::string, T> KV(std::string k, T v) {
  return {std::move(k), v};
}

double RequireP(const RunConfig& cfg) {
  if (!cfg.p) throw ConfigError("--p is required");
  const double p = *cfg.p;
  if (!(p > 0.0 && p < 0.5)) throw ConfigError("--p must lie in (0, 1/2)");
  return p;
}

RunOptions Run(const RunConfig& cfg) {
  RunOptions r;
  r.seed = cfg.seed.value_or(1);
  r.threads = std::max(1, cfg.threads);
  if (cfg.batch_size == 0) throw ConfigError("batch_size must be positive");
  r.batch_size = cfg.batch_size;
  return r;
}

template <class T>
T Or(T value, T fallback) {
  return value == T{} ? fallback : value;
}

void CheckPositive(std::int64_t v, const char* name) {
  if (v <= 0) throw ConfigError(std::string(name) + " must be positive");
}

json ComparisonJson(const ExactComparison& c) {
  return {{"quantity", c.quantity}, {"mc", ToJson(c.mc)}, {"exact", c.exact},
          {"sigma", c.sigma}};
}

// ---------------------------------------------------------------------------

Report SimulateCovariance(const RunConfig& cfg, double p) {
  const std::int64_t n = Or<std::int64_t>(cfg.n, 10'000);
  const std::uint64_t samples = Or<std::uint64_t>(cfg.samples, 100'000);
  CheckPositive(n, "n");
  const CovarianceReport r = PathCovariance(p, n, samples, cfg.flex_cap, Run(cfg));
  Report rep;
  rep.experiment = "path_covariance";
  const std::string ps = Params(KV("p", p), KV("n", n));
  rep.Add("var_U(1)", ps, r.var_u);
  rep.AddExact("expected_var", ps, r.expected_var);
  rep.Add("cov_UV(1)", ps, r.cov);
  rep.AddExact("expected_cov", ps, r.expected_cov);
  rep.AddExact("cov_sigma", ps, std::abs(r.cov.value - r.expected_cov) / r.cov.se);
  rep.AddExact("unresolved", ps, static_cast<double>(r.unresolved));
  rep.payload = {{"n", n},
                 {"samples", samples},
                 {"var_u", ToJson(r.var_u)},
                 {"cov", ToJson(r.cov)},
                 {"expected_var", r.expected_var},
                 {"expected_cov", r.expected_cov},
                 {"cov_sigma", std::abs(r.cov.value - r.expected_cov) / r.cov.se},
                 {"unresolved", r.unresolved},
                 {"max_extension", r.max_extension}};
  return rep;
}

Report SimulateFlex(const RunConfig& cfg, double p) {
  const auto grid = cfg.grid.empty() ? DyadicGrid(6, 12) : cfg.grid;
  const auto nus = cfg.nus.empty() ? std::vector<double>{0.9, MuPrimeFromP(p) / 2.0} : cfg.nus;
  const std::uint64_t samples = Or<std::uint64_t>(cfg.samples, 10'000);
  const FlexReport r = FlexibleOrderDiagnostic(p, grid, nus, samples, Run(cfg));
  Report rep;
  rep.experiment = "flexible_orders";
  json points = json::array();
  for (const FlexPoint& pt : r.points) {
    rep.Add("mean_N_f", Params(KV("n", pt.n)), pt.mean_flex);
    rep.Add("mean_N_h", Params(KV("n", pt.n)), pt.mean_ham_orders);
    json viol = json::array();
    for (std::size_t i = 0; i < nus.size(); ++i) {
      rep.Add("violation", Params(KV("n", pt.n), KV("nu", nus[i])), pt.violation[i]);
      viol.push_back({{"nu", nus[i]}, {"fraction", ToJson(pt.violation[i])}});
    }
    points.push_back({{"n", pt.n},
                      {"mean_flex", ToJson(pt.mean_flex)},
                      {"mean_ham_orders", ToJson(pt.mean_ham_orders)},
                      {"violation", viol}});
  }
  rep.AddExact("flex_growth_exponent", "", r.flex_growth_exponent);
  rep.AddExact("ham_growth_exponent", "", r.ham_growth_exponent);
  rep.payload = {{"samples", samples},
                 {"points", points},
                 {"flex_growth_exponent", r.flex_growth_exponent},
                 {"ham_growth_exponent", r.ham_growth_exponent},
                 {"total_order_bound_holds", r.total_order_bound_holds}};
  return rep;
}

Report SimulateMcExact(const RunConfig& cfg, double p) {
  const std::int64_t n = Or<std::int64_t>(cfg.n, 12);
  const std::int64_t h = Or<std::int64_t>(cfg.h, 3);
  const std::int64_t c = Or<std::int64_t>(cfg.c, 3);
  CheckPositive(n, "n");
  if (n > kDefaultDpLimit) throw ConfigError("mc-exact needs n <= 22");
  const std::uint64_t samples = Or<std::uint64_t>(cfg.samples, 1'000'000);
  const McVsExactReport r = McVsExact(p, n, h, c, samples, Run(cfg));
  Report rep;
  rep.experiment = "mc_vs_exact";
  json rows = json::array();
  for (const auto& row : r.rows) {
    rep.Add(row.quantity + ":mc", Params(KV("n", n)), row.mc);
    rep.AddExact(row.quantity + ":exact", Params(KV("n", n)), row.exact);
    rep.AddExact(row.quantity + ":sigma", Params(KV("n", n)), row.sigma);
    rows.push_back(ComparisonJson(row));
  }
  rep.payload = {{"n", n}, {"samples", samples}, {"rows", rows}};
  return rep;
}

Report SimulateWords(const RunConfig& cfg, double p) {
  const std::int64_t n = Or<std::int64_t>(cfg.n, 20);
  const std::uint64_t count = Or<std::uint64_t>(cfg.samples, 10);
  CheckPositive(n, "n");
  SymbolSampler src(p, StreamId{cfg.seed.value_or(1), 0});
  // Unmatched F symbols look further into the past on a separate stream.
  SymbolSampler past(p, StreamId{cfg.seed.value_or(1), 1});
  Report rep;
  rep.experiment = "words";
  rep.table_header = {"index", "word", "reduced", "y_word"};
  json words = json::array();
  for (std::uint64_t i = 0; i < count; ++i) {
    Word w;
    for (std::int64_t j = 0; j < n; ++j) w.symbols.push_back(src.Next());
    const std::string reduced = FormatWord(Reduce(w).canonical());
    const std::string y = FormatWord(ResolveFlex(w, past, cfg.flex_cap).y_word);
    rep.table_rows.push_back({Num(i), FormatWord(w), reduced, y});
    words.push_back({{"word", FormatWord(w)}, {"reduced", reduced}, {"y_word", y}});
  }
  rep.payload = {{"n", n}, {"words", words}};
  return rep;
}

// ---------------------------------------------------------------------------

json TailFitJson(const TailFit& f) {
  json pts = json::array();
  for (const TailPoint& pt : f.points) {
    pts.push_back({{"n", pt.n},
                   {"probability", ToJson(pt.probability)},
                   {"unknown_fraction", pt.unknown_fraction}});
  }
  return {{"event", f.event},
          {"samples", f.samples},
          {"points", pts},
          {"slope", f.slope},
          {"slope_se", f.slope_se},
          {"exponent", f.exponent},
          {"ci_lo", f.ci_lo},
          {"ci_hi", f.ci_hi},
          {"bootstrap_resamples", f.bootstrap_resamples},
          {"exponent_unknown_as_miss", f.exponent_unknown_as_miss},
          {"exponent_unknown_as_hit", f.exponent_unknown_as_hit},
          {"max_unknown_fraction", f.max_unknown_fraction}};
}

void AddTailRows(Report& rep, const TailFit& f) {
  for (const TailPoint& pt : f.points) {
    rep.Add("P(" + f.event + ")", Params(KV("n", pt.n)), pt.probability);
  }
  rep.Add("exponent:" + f.event, "", {f.exponent, f.slope_se});
  rep.AddExact("ci_lo:" + f.event, "", f.ci_lo);
  rep.AddExact("ci_hi:" + f.event, "", f.ci_hi);
  if (f.max_unknown_fraction > 0.0) {
    rep.AddExact("exponent_unknown_as_miss:" + f.event, "", f.exponent_unknown_as_miss);
    rep.AddExact("exponent_unknown_as_hit:" + f.event, "", f.exponent_unknown_as_hit);
    rep.AddExact("max_unknown_fraction:" + f.event, "", f.max_unknown_fraction);
  }
}

}  // namespace

Report Simulate(const RunConfig& cfg) {
  const double p = RequireP(cfg);
  const std::string mode = cfg.mode.empty() ? "covariance" : cfg.mode;
  if (mode == "covariance") return SimulateCovariance(cfg, p);
  if (mode == "flex") return SimulateFlex(cfg, p);
  if (mode == "mc-exact") return SimulateMcExact(cfg, p);
  if (mode == "words") return SimulateWords(cfg, p);
  throw ConfigError("simulate: unknown mode '" + mode +
                    "' (covariance, flex, mc-exact, words)");
}

Report Tail(const RunConfig& cfg) {
  const double p = RequireP(cfg);
  const std::string ev = cfg.mode.empty() ? "I" : cfg.mode;
  const std::uint64_t samples = Or<std::uint64_t>(cfg.samples, 1'000'000);
  auto grid = [&](int lo, int hi) { return cfg.grid.empty() ? DyadicGrid(lo, hi) : cfg.grid; };
  TailEvent event;
  std::uint64_t tag = 0;
  if (ev == "I") {
    event = FirstOrderTailEvent(grid(8, 15));
    tag = 1;
  } else if (ev == "P") {
    event = ClearingTailEvent(grid(8, 15));
    tag = 2;
  } else if (ev == "J") {
    const std::int64_t horizon = Or<std::int64_t>(cfg.horizon, std::int64_t{1} << 22);
    event = HamburgerTailEvent(grid(8, 15), cfg.l_grid.empty() ? DyadicGrid(2, 6) : cfg.l_grid,
                               horizon);
    tag = 3;
  } else if (ev == "renewal") {
    event = RenewalTailEvent(grid(8, 15));
    tag = 4;
  } else if (ev == "renewal-literal") {
    event = RenewalTailEvent(grid(8, 12), true);
    tag = 5;
  } else if (ev == "interval") {
    const std::int64_t n = Or<std::int64_t>(cfg.n, std::int64_t{1} << 14);
    event = IntervalTailEvent(n, grid(4, 10));
    tag = 6;
  } else if (ev == "synthetic") {
    event = SyntheticTailEvent(grid(8, 15), Or(cfg.alpha, 0.5));
    tag = 7;
  } else {
    throw ConfigError("tail: unknown event '" + ev +
                      "' (I, P, J, renewal, renewal-literal, interval, synthetic)");
  }
  const auto fits = FitTail(event, p, samples, Run(cfg), tag << 48, cfg.bootstrap);
  Report rep;
  rep.experiment = "tail";
  json arr = json::array();
  for (const TailFit& f : fits) {
    AddTailRows(rep, f);
    arr.push_back(TailFitJson(f));
  }
  rep.payload = {{"event", ev}, {"fits", arr}};
  return rep;
}

Report LocalLimit(const RunConfig& cfg) {
  const double p = RequireP(cfg);
  LocalLimitOptions o;
  o.m = static_cast<int>(Or<std::int64_t>(cfg.m, 32));
  o.samples = Or<std::uint64_t>(cfg.samples, o.samples);
  o.reflect_v = cfg.reflect_v;
  if (o.m < 8) throw ConfigError("local-limit needs m >= 8");
  const LocalLimitReport r = LocalLimitCheck(p, o, Run(cfg));
  Report rep;
  rep.experiment = "local_limit";
  const std::string ps = Params(KV("m", o.m));
  json bins = json::array();
  for (const LocalLimitBin& b : r.bins) {
    const std::string bp = Params(KV("m", o.m), KV("t_lo", b.t_lo), KV("t_hi", b.t_hi),
                                  KV("v_lo", b.v_lo), KV("v_hi", b.v_hi));
    rep.Add("m3_P_bin_average", bp, {b.empirical, b.se});
    rep.AddExact("g_bin_average", bp, b.model);
    bins.push_back({{"t_lo", b.t_lo}, {"t_hi", b.t_hi}, {"v_lo", b.v_lo}, {"v_hi", b.v_hi},
                    {"lattice_points", b.lattice_points}, {"count", b.count},
                    {"empirical", ToJson({b.empirical, b.se})}, {"model", b.model},
                    {"model_unreflected", b.model_unreflected}});
  }
  rep.AddExact("sup_g", ps, r.sup_g);
  rep.AddExact("sup_discrepancy", ps, r.sup_discrepancy);
  rep.AddExact("sup_discrepancy_over_sup_g", ps, r.sup_discrepancy / r.sup_g);
  rep.AddExact("l1_discrepancy", ps, r.l1_discrepancy);
  rep.AddExact("sup_discrepancy_unreflected", ps, r.sup_discrepancy_unreflected);
  rep.payload = {{"m", o.m},
                 {"samples", r.samples},
                 {"truncated", r.truncated},
                 {"in_window", r.in_window},
                 {"reflect_v", o.reflect_v},
                 {"t_bin", o.t_bin},
                 {"v_bin", o.v_bin},
                 {"sup_g", r.sup_g},
                 {"sup_discrepancy", r.sup_discrepancy},
                 {"sup_discrepancy_over_sup_g", r.sup_discrepancy / r.sup_g},
                 {"l1_discrepancy", r.l1_discrepancy},
                 {"sup_discrepancy_unreflected", r.sup_discrepancy_unreflected},
                 {"mode_empirical", r.mode_empirical},
                 {"mode_model", r.mode_model},
                 {"min_bin_count", r.min_bin_count},
                 {"low_count_warning", r.low_count_warning},
                 {"bins", bins}};
  return rep;
}

Report Conditioned(const RunConfig& cfg) {
  const double p = RequireP(cfg);
  const std::string mode = cfg.mode.empty() ? "paths" : cfg.mode;
  Report rep;
  if (mode == "endpoint") {
    const std::int64_t n = Or<std::int64_t>(cfg.n, 10);
    CheckPositive(n, "n");
    if (n > kDefaultDpLimit) throw ConfigError("endpoint mode needs n <= 22");
    const std::uint64_t attempts = Or<std::uint64_t>(cfg.attempts, 10'000'000);
    const EndpointLawReport r = ConditionedEndpointLaw(p, n, attempts, Run(cfg));
    rep.experiment = "endpoint_law";
    json cells = json::array();
    for (const EndpointCell& c : r.cells) {
      const std::string ps = Params(KV("n", n), KV("h", c.h), KV("c", c.c));
      rep.Add("P(h,c|I>n):mc", ps, c.mc);
      rep.AddExact("P(h,c|I>n):exact", ps, c.exact);
      rep.AddExact("sigma", ps, c.sigma);
      cells.push_back({{"h", c.h}, {"c", c.c}, {"mc", ToJson(c.mc)}, {"exact", c.exact},
                       {"sigma", c.sigma}});
    }
    rep.AddExact("max_sigma", Params(KV("n", n)), r.max_sigma);
    rep.payload = {{"n", n}, {"attempts", r.attempts}, {"accepted", r.accepted},
                   {"max_sigma", r.max_sigma}, {"cells", cells}};
    return rep;
  }
  if (mode != "paths") throw ConfigError("conditioned: unknown mode '" + mode + "' (paths, endpoint)");
  ConditionedOptions o;
  o.n = Or(cfg.n, o.n);
  o.h = Or(cfg.h, o.h);
  o.c = Or(cfg.c, o.c);
  o.window = cfg.window;
  o.walk_samples = Or(cfg.samples, o.walk_samples);
  o.bm_samples = Or(cfg.bm_samples, o.bm_samples);
  if (!cfg.slices.empty()) o.slices = cfg.slices;
  o.bm_dt = Or(cfg.dt, o.bm_dt);
  o.crossing_correction = cfg.crossing_correction;
  o.max_attempts = Or(cfg.attempts, o.max_attempts);
  const PathCompareReport r = ConditionedPathCompare(p, o, Run(cfg));
  rep.experiment = "conditioned_paths";
  json slices = json::array();
  for (const SliceKs& s : r.slices) {
    const std::string ps = Params(KV("n", o.n), KV("t", s.t));
    rep.AddExact("ks_u", ps, s.ks_u);
    rep.AddExact("ks_v", ps, s.ks_v);
    rep.AddExact("ks_u_lattice", ps, s.ks_u_lattice);
    rep.AddExact("ks_v_lattice", ps, s.ks_v_lattice);
    rep.AddExact("ks_critical_5pct", ps, s.critical);
    slices.push_back({{"t", s.t}, {"ks_u", s.ks_u}, {"ks_v", s.ks_v},
                      {"ks_u_lattice", s.ks_u_lattice}, {"ks_v_lattice", s.ks_v_lattice},
                      {"critical", s.critical}});
  }
  const std::string ps = Params(KV("n", o.n), KV("h", o.h), KV("c", o.c), KV("window", o.window));
  rep.Add("walk_acceptance", ps,
          Proportion(r.walk_samples, std::max<std::uint64_t>(1, r.walk_attempts)));
  rep.Add("bridge_acceptance", ps,
          Proportion(r.bm_samples, std::max<std::uint64_t>(1, r.bm_attempts)));
  rep.payload = {{"n", o.n},
                 {"h", o.h},
                 {"c", o.c},
                 {"window", o.window},
                 {"bm_dt", o.bm_dt},
                 {"crossing_correction", o.crossing_correction},
                 {"walk_samples", r.walk_samples},
                 {"walk_attempts", r.walk_attempts},
                 {"bm_samples", r.bm_samples},
                 {"bm_attempts", r.bm_attempts},
                 {"all_walks_in_quadrant", r.all_walks_in_quadrant},
                 {"all_walks_in_window", r.all_walks_in_window},
                 {"metric", "per-slice two-sample KS (proxy for a path-space distance)"},
                 {"slices", slices}};
  return rep;
}

Report EmptyWord(const RunConfig& cfg) {
  const double p = RequireP(cfg);
  const std::int64_t limit = Or<std::int64_t>(cfg.max_n, 22);
  if (limit < 2 || limit % 2 != 0) throw ConfigError("max_n must be even and >= 2");
  const auto lengths =
      cfg.grid.empty() ? std::vector<std::int64_t>{std::min<std::int64_t>(12, limit)} : cfg.grid;
  for (std::int64_t v : lengths) {
    if (v <= 0 || v % 2 != 0 || v > limit) {
      throw ConfigError("MC lengths must be even and at most max_n");
    }
  }
  const std::uint64_t samples = Or<std::uint64_t>(cfg.samples, 1'000'000);
  const EmptyWordReport r = EmptyWordExperiment(p, limit, lengths, samples, Run(cfg));
  Report rep;
  rep.experiment = "empty_word";
  json exact = json::array();
  for (const auto& [two_n, prob] : r.exact) {
    rep.AddExact("P(X(1,2n)=empty):exact", Params(KV("two_n", two_n)), prob);
    exact.push_back({{"two_n", two_n}, {"probability", prob}});
  }
  json slopes = json::array();
  for (const auto& [two_n, s] : r.local_slopes) {
    rep.AddExact("local_slope", Params(KV("two_n", two_n)), s);
    slopes.push_back({{"two_n", two_n}, {"slope", s}});
  }
  json mc = json::array();
  for (const auto& row : r.mc) {
    rep.Add(row.quantity + ":mc", "", row.mc);
    rep.AddExact(row.quantity + ":sigma", "", row.sigma);
    mc.push_back(ComparisonJson(row));
  }
  rep.AddExact("final_slope", "", r.final_slope);
  rep.AddExact("target_exponent", "", r.target_exponent);
  rep.payload = {{"exact", exact},
                 {"local_slopes", slopes},
                 {"slopes_strictly_decreasing", r.slopes_strictly_decreasing},
                 {"final_slope", r.final_slope},
                 {"target_exponent", r.target_exponent},
                 {"target_note", "asymptotic exponent -(1+2 mu); not reachable at DP lengths"},
                 {"mc_samples", r.mc_samples},
                 {"mc", mc}};
  return rep;
}

Report Oracle(const RunConfig& cfg) {
  const double p = RequireP(cfg);
  Report rep;
  rep.experiment = "oracle";
  if (cfg.empty || cfg.lossy) {
    const std::int64_t max_n = Or<std::int64_t>(cfg.max_n, 22);
    if (max_n < 2 || max_n % 2 != 0) throw ConfigError("--max-n must be even and >= 2");
    json rows = json::array();
    if (cfg.lossy) {
      const LossyEmptyResult r = LossyEmptyProbTable(max_n, p, kLossyThreshold);
      rep.table_header = {"two_n", "probability_approx"};
      for (const auto& [two_n, prob] : r.empty_prob) {
        rep.table_rows.push_back({Num(two_n), Num(prob)});
        rows.push_back({{"two_n", two_n}, {"probability", prob}});
      }
      rep.payload = {{"table", "empty_word"}, {"approximate", true}, {"threshold", kLossyThreshold}, {"pruned_mass", r.pruned},
                     {"peak_states", r.peak_states}, {"rows", rows}};
      return rep;
    }
    const auto table = ExactEmptyProbTable(max_n, p, std::max(max_n, kDefaultDpLimit),
                                           cfg.memory_budget, std::max(1, cfg.threads));
    rep.table_header = {"two_n", "probability"};
    for (const auto& [two_n, prob] : table) {
      rep.table_rows.push_back({Num(two_n), Num(prob)});
      rows.push_back({{"two_n", two_n}, {"probability", prob}});
    }
    rep.payload = {{"table", "empty_word"}, {"approximate", false}, {"rows", rows}};
    return rep;
  }
  const std::int64_t n = Or<std::int64_t>(cfg.n, 12);
  CheckPositive(n, "n");
  const NoOrderTable t = ExactNoOrderTable(n, p, std::max(n, kDefaultDpLimit), cfg.memory_budget,
                                           std::max(1, cfg.threads));
  rep.table_header = {"n", "h", "c", "probability"};
  json cells = json::array();
  for (const auto& [hc, prob] : t.prob) {
    rep.table_rows.push_back({Num(n), Num(hc.first), Num(hc.second), Num(prob)});
    cells.push_back({{"h", hc.first}, {"c", hc.second}, {"probability", prob}});
  }
  rep.payload = {{"table", "no_order"}, {"n", n}, {"survival", t.survival},
                 {"dead", t.dead}, {"cells", cells}};
  return rep;
}

Report BmReference(const RunConfig& cfg) {
  const double p = RequireP(cfg);
  const std::string mode = cfg.mode.empty() ? "last-exit" : cfg.mode;
  Report rep;
  if (mode == "first-passage") {
    const std::uint64_t samples = Or<std::uint64_t>(cfg.samples, 1'000'000);
    const double dt = Or(cfg.dt, 1e-4);
    const double t_max = Or(cfg.t_max, 5.0);
    const FirstPassageReport r = FirstPassageCheck(p, samples, dt, t_max, Run(cfg));
    rep.experiment = "first_passage";
    const std::string ps = Params(KV("p", p), KV("dt", dt), KV("t_max", t_max));
    rep.AddExact("a0", ps, r.g.a0);
    rep.AddExact("a1", ps, r.g.a1);
    rep.AddExact("a2", ps, r.g.a2);
    rep.AddExact("a3", ps, r.g.a3);
    rep.AddExact("g_total_mass", ps, r.g_total_mass);
    rep.Add("censored_fraction", ps,
            Proportion(static_cast<std::uint64_t>(std::llround(r.censored_fraction * samples)),
                       samples));
    rep.AddExact("censored_expected", ps, r.censored_expected);
    rep.AddExact("ks_tau", ps, r.ks_tau);
    rep.AddExact("ks_v", ps, r.ks_v);
    rep.payload = {{"samples", samples}, {"dt", dt}, {"t_max", t_max},
                   {"g", {{"a0", r.g.a0}, {"a1", r.g.a1}, {"a2", r.g.a2}, {"a3", r.g.a3}}},
                   {"g_total_mass", r.g_total_mass},
                   {"censored_fraction", r.censored_fraction},
                   {"censored_expected", r.censored_expected},
                   {"ks_tau", r.ks_tau}, {"ks_v", r.ks_v}};
    return rep;
  }
  if (mode == "last-exit") {
    const std::uint64_t paths = Or<std::uint64_t>(cfg.samples, 1'000'000);
    const double dt = Or(cfg.dt, 1e-4);
    const int bins = Or(cfg.bins, 50);
    const auto levels = cfg.levels.empty() ? std::vector<double>{0.0, 1.0} : cfg.levels;
    for (double u : levels) {
      if (u < 0.0) throw ConfigError("last-exit levels must be >= 0");
    }
    const LastExitReport r = LastExitCheck(levels, paths, dt, bins, Run(cfg));
    rep.experiment = "last_exit";
    json lv = json::array();
    for (const LastExitLevel& l : r.levels) {
      for (std::size_t i = 0; i < l.density.size(); ++i) {
        const std::string ps = Params(KV("u", l.u), KV("t_lo", l.bin_edges[i]),
                                      KV("t_hi", l.bin_edges[i + 1]));
        rep.Add("density", ps, {l.density[i], l.density_se[i]});
        rep.AddExact("shape", ps, l.shape[i]);
      }
      const std::string ps = Params(KV("u", l.u));
      rep.AddExact("shape_correlation", ps, l.shape_correlation);
      rep.Add("fitted_norm", ps, l.fitted_norm);
      rep.AddExact("norm_1_over_pi", ps, kLastExitStatedNorm);
      rep.AddExact("norm_1_over_2pi", ps, kLastExitFittedNorm);
      rep.Add("P(tau_u>0)", ps, l.positive_fraction);
      rep.AddExact("P(B(1)>u)", ps, l.expected_positive);
      lv.push_back({{"u", l.u}, {"bin_edges", l.bin_edges}, {"density", l.density},
                    {"density_se", l.density_se}, {"shape", l.shape},
                    {"shape_correlation", l.shape_correlation},
                    {"fitted_norm", ToJson(l.fitted_norm)},
                    {"positive_fraction", ToJson(l.positive_fraction)},
                    {"expected_positive", l.expected_positive},
                    {"mass_with_1_over_pi", l.stated_mass},
                    {"mass_with_1_over_2pi", l.halved_mass},
                    {"sigma_1_over_pi", l.sigma_stated},
                    {"sigma_1_over_2pi", l.sigma_halved}});
    }
    rep.payload = {{"paths", paths}, {"dt", r.dt}, {"levels", lv}, {"conclusion", r.conclusion}};
    return rep;
  }
  if (mode == "correlated-last-exit") {
    const std::uint64_t paths = Or<std::uint64_t>(cfg.samples, 200'000);
    const double dt = Or(cfg.dt, 1e-3);
    const double u = cfg.levels.empty() ? 0.5 : cfg.levels.front();
    if (!(u > 0.0)) throw ConfigError("correlated last-exit needs a level u > 0");
    const CorrelatedLastExitReport r = CorrelatedLastExitCheck(p, u, paths, dt, Run(cfg));
    rep.experiment = "correlated_last_exit";
    const std::string ps = Params(KV("p", p), KV("u", u));
    rep.AddExact("shape_correlation", ps, r.shape_correlation);
    rep.Add("fitted_norm", ps, r.fitted_norm);
    rep.AddExact("norm_1_over_2pi", ps, kLastExitFittedNorm);
    rep.payload = {{"p", p}, {"u", u}, {"paths", paths}, {"dt", r.dt},
                   {"shape_correlation", r.shape_correlation},
                   {"fitted_norm", ToJson(r.fitted_norm)}, {"positive", r.positive}};
    return rep;
  }
  throw ConfigError("bm-reference: unknown mode '" + mode +
                    "' (first-passage, last-exit, correlated-last-exit)");
}

// ---------------------------------------------------------------------------

std::vector<SelfCheck> RunSelfChecks() {
  std::vector<SelfCheck> out;
  auto check = [&out](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  auto near = [](double a, double b, double tol) { return std::abs(a - b) <= tol; };

  const ModelParams mp = Exponents(1.0 / 3.0);
  check("exponents at p=1/3", near(mp.q, 1, 1e-10) && near(mp.kappa, 6, 1e-10) &&
                                  near(mp.mu, 0.75, 1e-10) && near(mp.mu_prime, 0.375, 1e-10));
  check("mu formulas agree", near(MuFromP(0.2), MuFromKappa(KappaFromP(0.2)), 1e-10));

  double total = 0.0;
  for (double q : SymbolDist::FromP(0.3).prob) total += q;
  check("symbol probabilities sum to 1", total == 1.0);

  auto reduces_to = [](const char* in, const char* expect) {
    return FormatWord(Reduce(ParseWord(in)).canonical()) == expect;
  };
  check("Hh reduces to empty", reduces_to("Hh", ""));
  check("HCf reduces to H", reduces_to("HCf", "H"));
  check("hH is irreducible", reduces_to("hH", "hH"));
  check("HCfh reduces to empty", reduces_to("HCfh", ""));
  check("backward: cH reduces to cH",
        FormatWord(ReduceBackward(ParseWord("Hc")).canonical()) == "cH");

  for (double p : {0.1, 0.3}) {
    const double four = 2.0 * 0.25 * ((1 - p) / 4 + p / 2);
    check("P(X(1,2) empty) = (1+p)/8 at p=" + Num(p),
          near(ExactEmptyProb(2, p), (1 + p) / 8, 1e-15) && near(four, (1 + p) / 8, 1e-15));
    const NoOrderTable t2 = ExactNoOrderTable(2, p);
    check("P(I>2) = (3+p)/8 at p=" + Num(p), near(t2.survival, (3 + p) / 8, 1e-15));
    check("P(E_2^{1,1}) = 1/8 at p=" + Num(p), near(t2.at(1, 1), 0.125, 1e-15));
    const NoOrderTable t6 = ExactNoOrderTable(6, p);
    const double bf = BruteForce(6, p, [](const Word& w) {
      const ReducedState s = Reduce(w);
      return s.has_order() ? 0.0 : 1.0;
    });
    check("DP survival equals enumeration at n=6, p=" + Num(p), near(bf, t6.survival, 1e-12));
  }

  const GParams g = GParams::FromP(1.0 / 3.0);
  check("g constants at p=1/3",
        near(g.a0, std::sqrt(3.0) / std::numbers::pi, 1e-12) && near(g.a1, 1.5, 1e-12) &&
            near(g.a2, 2.0, 1e-12) && near(g.a3, 0.5, 1e-12));
  check("g time marginal has mass 1", near(GTimeCdf(1e300, g), 1.0, 1e-9));

  {
    const Word w = ParseWord("HHhH");
    const DiscretePath path(w);
    check("path d of HHhH", path.d(0) == 0 && path.d(2) == 2 && path.d(4) == 2 &&
                                path.d_star(4) == 0);
  }
  {
    SymbolSampler a(0.3, StreamId{7, 3});
    SymbolSampler b(0.3, StreamId{7, 3});
    bool same = true;
    for (int i = 0; i < 1000; ++i) same = same && a.Next() == b.Next();
    check("identical stream ids give identical symbols", same);
  }
  {
    SymbolSampler src(0.3, StreamId{11, 0});
    bool ok = true;
    for (int i = 0; i < 2000 && ok; ++i) {
      Word x;
      Word y;
      for (int j = 0; j < 12; ++j) x.symbols.push_back(src.Next());
      for (int j = 0; j < 12; ++j) y.symbols.push_back(src.Next());
      const ReducedState whole = Reduce(Concat(x, y));
      const ReducedState parts = Reduce(Concat(ToWord(Reduce(x)), ToWord(Reduce(y))));
      ok = whole == parts && whole == ReduceBackward(Concat(x, y));
    }
    check("semigroup and confluence on random words", ok);
  }
  return out;
}

Report SelfTest(const RunConfig&) {
  Report rep;
  rep.experiment = "selftest";
  rep.table_header = {"check", "status", "detail"};
  json arr = json::array();
  for (const SelfCheck& c : RunSelfChecks()) {
    rep.table_rows.push_back({c.name, c.passed ? "PASS" : "FAIL", c.detail});
    arr.push_back({{"check", c.name}, {"passed", c.passed}});
  }
  rep.payload = {{"checks", arr}};
  return rep;
}

Report RunCommand(const RunConfig& cfg) {
  if (cfg.command == "simulate") return Simulate(cfg);
  if (cfg.command == "tail") return Tail(cfg);
  if (cfg.command == "local-limit") return LocalLimit(cfg);
  if (cfg.command == "conditioned") return Conditioned(cfg);
  if (cfg.command == "empty-word") return EmptyWord(cfg);
  if (cfg.command == "oracle") return Oracle(cfg);
  if (cfg.command == "bm-reference") return BmReference(cfg);
  if (cfg.command == "selftest") return SelfTest(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace burger::cli
