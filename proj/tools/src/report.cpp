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

#include "burger/cli/report.hpp"

#include <cmath>

#ifndef BURGER_BUILD_ID
#define BURGER_BUILD_ID "unknown"
#endif

namespace burger::cli {

namespace {

std::string CsvNumber(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return FormatDouble(x);
}

std::string CsvCell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string BuildId() { return BURGER_BUILD_ID; }

std::string RenderCsv(const Report& report) {
  std::string out;
  if (!report.table_header.empty()) {
    for (std::size_t i = 0; i < report.table_header.size(); ++i) {
      out += (i ? "," : "") + CsvCell(report.table_header[i]);
    }
    out += '\n';
    for (const auto& row : report.table_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + CsvCell(row[i]);
      out += '\n';
    }
    return out;
  }
  out = "experiment,quantity,params,estimate,se\n";
  for (const CsvRow& r : report.rows) {
    out += CsvCell(r.experiment) + ',' + CsvCell(r.quantity) + ',' + CsvCell(r.params) +
           ',' + CsvNumber(r.estimate) + ',' + (r.se ? CsvNumber(*r.se) : "") + '\n';
  }
  return out;
}

nlohmann::json ToJson(const Estimate& e) { return {{"value", e.value}, {"se", e.se}}; }

nlohmann::json ToJson(const RunConfig& config) {
  // Same keys and spellings as the config file.
  nlohmann::json j = nlohmann::json::object();
  const std::string text = FormatConfig(config);
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    const std::string line = text.substr(start, nl - start);
    const auto eq = line.find(" = ");
    const std::string value = line.substr(eq + 3);
    // Scalars keep their JSON type; lists and text stay strings.
    nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
    if (parsed.is_number() || parsed.is_boolean()) {
      j[line.substr(0, eq)] = parsed;
    } else {
      j[line.substr(0, eq)] = value;
    }
    start = nl + 1;
  }
  return j;
}

std::string RenderJson(const Report& report, const RunConfig& config, double wall_time_s) {
  nlohmann::json j;
  j["report_version"] = kReportVersion;
  j["experiment"] = report.experiment;
  j["build"] = BuildId();
  j["config"] = ToJson(config);
  j["wall_time_s"] = wall_time_s;
  j["payload"] = report.payload;
  return j.dump(2) + "\n";
}

}  // namespace burger::cli
