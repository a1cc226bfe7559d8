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

#include "burger/cli/app.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "burger/brownian.hpp"
#include "burger/cli/commands.hpp"
#include "burger/exact_oracle.hpp"
#include "burger/path.hpp"

namespace burger::cli {

namespace {

struct Spec {
  const char* name;
  const char* help;
  std::vector<std::string> options;
};

// Subcommand-specific option names; the shared ones live on the app.
const std::vector<Spec>& Specs() {
  static const std::vector<Spec> specs = {
      {"simulate", "Monte Carlo diagnostics on sampled words",
       {"mode", "n", "h", "c", "samples", "grid", "nus"}},
      {"tail", "Power-law tail fits for the stopping-time events",
       {"event", "samples", "n", "grid", "l-grid", "horizon", "alpha", "bootstrap"}},
      {"local-limit", "Local limit of (|X(-J,-1)|, d*) against g",
       {"m", "samples", "reflect-v"}},
      {"conditioned", "Walks conditioned on no orders against quadrant bridges",
       {"mode", "n", "h", "c", "window", "samples", "bm-samples", "slices", "dt",
        "crossing-correction", "attempts"}},
      {"empty-word", "Exact and Monte Carlo P(X(1,2n) = empty)",
       {"max-n", "grid", "samples"}},
      {"oracle", "Exact probability tables by dynamic programming",
       {"n", "max-n", "empty", "lossy"}},
      {"bm-reference", "Brownian reference laws (first passage, last exit)",
       {"mode", "samples", "dt", "t-max", "bins", "levels"}},
      {"selftest", "Fast built-in consistency checks", {}},
  };
  return specs;
}

void AddOption(CLI::App& sub, const std::string& name, RunConfig& c) {
  if (name == "mode") {
    sub.add_option("--mode", c.mode, "Experiment mode");
  } else if (name == "event") {
    sub.add_option("--event", c.mode,
                   "I, P, J, renewal, renewal-literal, interval or synthetic");
  } else if (name == "samples") {
    sub.add_option("--samples", c.samples, "Number of samples (0 = default)");
  } else if (name == "n") {
    sub.add_option("--n", c.n, "Word length");
  } else if (name == "m") {
    sub.add_option("--m", c.m, "Scale parameter m");
  } else if (name == "h") {
    sub.add_option("--h", c.h, "Hamburger count at the endpoint");
  } else if (name == "c") {
    sub.add_option("--c", c.c, "Cheeseburger count at the endpoint");
  } else if (name == "max-n") {
    sub.add_option("--max-n", c.max_n, "Largest (even) length");
  } else if (name == "horizon") {
    sub.add_option("--horizon", c.horizon, "Scan horizon for J");
  } else if (name == "window") {
    sub.add_option("--window", c.window, "Flexible-order resolution window");
  } else if (name == "grid") {
    sub.add_option("--grid", c.grid, "Comma-separated lengths")->delimiter(',');
  } else if (name == "l-grid") {
    sub.add_option("--l-grid", c.l_grid, "Comma-separated grid for the L events")
        ->delimiter(',');
  } else if (name == "levels") {
    sub.add_option("--levels", c.levels, "Comma-separated levels u")->delimiter(',');
  } else if (name == "slices") {
    sub.add_option("--slices", c.slices, "Comma-separated time slices in (0,1)")
        ->delimiter(',');
  } else if (name == "nus") {
    sub.add_option("--nus", c.nus, "Comma-separated exponents nu")->delimiter(',');
  } else if (name == "alpha") {
    sub.add_option("--alpha", c.alpha, "Synthetic tail exponent");
  } else if (name == "dt") {
    sub.add_option("--dt", c.dt, "Brownian time step");
  } else if (name == "t-max") {
    sub.add_option("--t-max", c.t_max, "Censoring time");
  } else if (name == "bins") {
    sub.add_option("--bins", c.bins, "Histogram bins");
  } else if (name == "bootstrap") {
    sub.add_option("--bootstrap", c.bootstrap, "Bootstrap resamples (0 disables)");
  } else if (name == "bm-samples") {
    sub.add_option("--bm-samples", c.bm_samples, "Number of bridges");
  } else if (name == "attempts") {
    sub.add_option("--attempts", c.attempts, "Rejection attempt budget");
  } else if (name == "empty") {
    sub.add_flag("--empty", c.empty, "Tabulate P(X(1,2n) = empty)");
  } else if (name == "lossy") {
    sub.add_flag("--lossy", c.lossy, "Pruned, approximate empty-word table");
  } else if (name == "reflect-v") {
    sub.add_flag("--reflect-v,!--no-reflect-v", c.reflect_v,
                 "Compare against g(t, -v) (default on)");
  } else if (name == "crossing-correction") {
    sub.add_flag("--crossing-correction,!--no-crossing-correction",
                 c.crossing_correction, "Per-segment bridge crossing rejection (default on)");
  }
}

// --config has to be applied before the command-line overrides, so it is
// picked out of argv first.
std::optional<std::string> FindConfigPath(int argc, const char* const* argv) {
  std::optional<std::string> path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) {
      path = argv[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
    }
  }
  return path;
}

constexpr const char* kCsvHelp = R"(Output (--format csv, the default):
  First line: "# build=<id> seed=<seed>".
  Most commands: experiment,quantity,params,estimate,se
    params is "key=value;key=value"; se is empty for exact or derived values.
  oracle:          n,h,c,probability
  oracle --empty:  two_n,probability
  oracle --lossy:  two_n,probability_approx
  simulate --mode words: index,word,reduced,y_word
  selftest:        check,status,detail
--format json writes {report_version, experiment, build, config, wall_time_s,
payload}; config holds every setting including the seed actually used.

Exit codes: 0 ok, 1 internal error or failed selftest, 2 usage/config error,
3 resource limit or rejection budget exhausted.)";

std::uint64_t ClockSeed() {
  return static_cast<std::uint64_t>(
      std::chrono::high_resolution_clock::now().time_since_epoch().count());
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    if (const auto path = FindConfigPath(argc, argv)) cfg = LoadConfigFile(*path, cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Burger-model simulations, exact oracles and reference laws", "burger"};
  // -h stays free: --h is the hamburger count.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.footer(kCsvHelp);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option_function<double>("--p", [&cfg](double v) { cfg.p = v; },
                                  "Order probability p in (0, 1/2)");
  app.add_option_function<std::uint64_t>("--seed", [&cfg](std::uint64_t v) { cfg.seed = v; },
                                         "Master seed (default: clock)");
  app.add_option("--threads", cfg.threads, "Worker threads");
  app.add_option("--batch-size", cfg.batch_size, "Samples per deterministic batch");
  app.add_option("--output,-o", cfg.output, "Output file, - for stdout");
  const std::map<std::string, Format> formats{{"csv", Format::kCsv}, {"json", Format::kJson}};
  app.add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--memory-budget", cfg.memory_budget, "Exact-oracle memory budget (bytes)");
  app.add_option("--flex-cap", cfg.flex_cap, "Extension cap when resolving F symbols");

  for (const Spec& s : Specs()) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    for (const std::string& o : s.options) AddOption(*sub, o, cfg);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  if (!cfg.p && cfg.command != "selftest") {
    err << "error: --p is required\n\n" << app.help();
    return kExitUsage;
  }
  if (!cfg.seed) cfg.seed = ClockSeed();

  try {
    const auto start = std::chrono::steady_clock::now();
    const Report report = RunCommand(cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text =
        cfg.format == Format::kJson
            ? RenderJson(report, cfg, wall)
            : "# build=" + BuildId() + " seed=" + std::to_string(*cfg.seed) + "\n" +
                  RenderCsv(report);
    if (cfg.output == "-") {
      out << text;
    } else {
      std::ofstream f(cfg.output);
      if (!f) throw ConfigError("cannot open output file " + cfg.output);
      f << text;
    }
    if (cfg.command == "selftest") {
      for (const SelfCheck& c : RunSelfChecks()) {
        if (!c.passed) return kExitInternal;
      }
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // invalid_argument and domain_error from parameter checks.
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const AttemptsExhaustedError& e) {
    err << "sampler budget: " << e.what() << "\n";
    return kExitResource;
  } catch (const UnresolvedFlexError& e) {
    err << "flex cap: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace burger::cli
