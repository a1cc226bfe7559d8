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

// Experiment reports and their CSV / JSON renderings.
//
// CSV (default) is long format with the header
//   experiment,quantity,params,estimate,se
// where params is a ';'-separated list of name=value pairs and se is empty
// for exact values. Tables with their own schema (the oracle subcommand)
// replace the long format with their own header.
//
// JSON is one object: {"report_version": 1, "experiment", "build",
// "config", "wall_time_s", "payload"}. The payload depends only on the
// config and seed.

#ifndef BURGER_CLI_REPORT_HPP_
#define BURGER_CLI_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "burger/cli/config.hpp"
#include "burger/stats.hpp"

namespace burger::cli {

inline constexpr int kReportVersion = 1;

struct CsvRow {
  std::string experiment;
  std::string quantity;
  std::string params;
  double estimate = 0.0;
  std::optional<double> se;
};

struct Report {
  std::string experiment;
  nlohmann::json payload = nlohmann::json::object();
  std::vector<CsvRow> rows;
  std::vector<std::string> table_header;
  std::vector<std::vector<std::string>> table_rows;

  void Add(std::string quantity, std::string params, const Estimate& e) {
    rows.push_back({experiment, std::move(quantity), std::move(params), e.value, e.se});
  }
  void AddExact(std::string quantity, std::string params, double value) {
    rows.push_back({experiment, std::move(quantity), std::move(params), value, std::nullopt});
  }
};

/// git describe of the source tree at configure time, or "unknown".
std::string BuildId();

std::string RenderCsv(const Report& report);
std::string RenderJson(const Report& report, const RunConfig& config, double wall_time_s);

nlohmann::json ToJson(const Estimate& e);
nlohmann::json ToJson(const RunConfig& config);

}  // namespace burger::cli

#endif  // BURGER_CLI_REPORT_HPP_
