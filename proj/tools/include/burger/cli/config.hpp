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

// Run configuration shared by all subcommands, and its flat key=value file
// format:
//
//   # comment
//   p = 0.3333333333333333
//   grid = 256,512,1024
//
// Unknown keys and malformed values raise ConfigError. Numbers are written
// in shortest round-trip form, so Parse(Format(c)) == c.

#ifndef BURGER_CLI_CONFIG_HPP_
#define BURGER_CLI_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace burger::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kCsv, kJson };

struct RunConfig {
  std::string command;
  std::optional<double> p;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::uint64_t batch_size = 1 << 14;
  std::string output = "-";
  Format format = Format::kCsv;
  std::uint64_t memory_budget = std::uint64_t{2} << 30;
  std::int64_t flex_cap = 1'000'000;

  // Zero means "use the subcommand's default".
  std::uint64_t samples = 0;
  std::string mode;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t h = 0;
  std::int64_t c = 0;
  std::int64_t k = 0;
  std::int64_t r = 0;
  std::int64_t max_n = 0;
  std::int64_t horizon = 0;
  std::int64_t window = 3;
  std::vector<std::int64_t> grid;
  std::vector<std::int64_t> l_grid;
  std::vector<double> levels;
  std::vector<double> slices;
  std::vector<double> nus;
  double alpha = 0.0;
  double dt = 0.0;
  double t_max = 0.0;
  int bins = 0;
  int bootstrap = 200;
  std::uint64_t bm_samples = 0;
  std::uint64_t attempts = 0;
  bool empty = false;
  bool lossy = false;
  bool crossing_correction = true;
  bool reflect_v = true;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// key=value lines for every field (unset optionals are omitted).
std::string FormatConfig(const RunConfig& config);
/// Applies the keys found in `text` on top of `base`.
RunConfig ParseConfig(std::string_view text, RunConfig base = {});
RunConfig LoadConfigFile(const std::string& path, RunConfig base = {});

/// Names of all config keys, in file order.
std::vector<std::string> ConfigKeys();

/// Shortest round-trip decimal form, independent of the C locale.
std::string FormatDouble(double x);

}  // namespace burger::cli

#endif  // BURGER_CLI_CONFIG_HPP_
