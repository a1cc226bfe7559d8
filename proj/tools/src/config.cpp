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

#include "burger/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <system_error>

namespace burger::cli {

namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T ParseNumber(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad value for '" + std::string(key) + "': '" +
                      std::string(text) + "'");
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("bad boolean for '" + std::string(key) + "': '" +
                    std::string(text) + "'");
}

template <class T>
std::vector<T> ParseList(std::string_view key, std::string_view text) {
  std::vector<T> out;
  if (Trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(ParseNumber<T>(key, Trim(text.substr(start, comma - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
std::string FormatNumber(T x) {
  if constexpr (std::is_floating_point_v<T>) {
    return FormatDouble(x);
  } else {
    return std::to_string(x);
  }
}

template <class T>
std::string FormatList(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += FormatNumber(xs[i]);
  }
  return out;
}

struct Field {
  std::string key;
  // Empty optional: the field is unset and not written.
  std::function<std::optional<std::string>(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view)> set;
};

template <class T>
Field Number(std::string key, T RunConfig::*member) {
  return {key, [member](const RunConfig& c) { return std::optional(FormatNumber(c.*member)); },
          [key, member](RunConfig& c, std::string_view v) { c.*member = ParseNumber<T>(key, v); }};
}

template <class T>
Field Optional(std::string key, std::optional<T> RunConfig::*member) {
  return {key,
          [member](const RunConfig& c) -> std::optional<std::string> {
            if (!(c.*member)) return std::nullopt;
            return FormatNumber(*(c.*member));
          },
          [key, member](RunConfig& c, std::string_view v) { c.*member = ParseNumber<T>(key, v); }};
}

template <class T>
Field List(std::string key, std::vector<T> RunConfig::*member) {
  return {key, [member](const RunConfig& c) { return std::optional(FormatList(c.*member)); },
          [key, member](RunConfig& c, std::string_view v) { c.*member = ParseList<T>(key, v); }};
}

Field Flag(std::string key, bool RunConfig::*member) {
  return {key,
          [member](const RunConfig& c) { return std::optional<std::string>(c.*member ? "true" : "false"); },
          [key, member](RunConfig& c, std::string_view v) { c.*member = ParseBool(key, v); }};
}

Field Text(std::string key, std::string RunConfig::*member) {
  return {key, [member](const RunConfig& c) { return std::optional(c.*member); },
          [member](RunConfig& c, std::string_view v) { c.*member = std::string(v); }};
}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      Text("command", &RunConfig::command),
      Optional("p", &RunConfig::p),
      Optional("seed", &RunConfig::seed),
      Number("threads", &RunConfig::threads),
      Number("batch_size", &RunConfig::batch_size),
      Text("output", &RunConfig::output),
      {"format",
       [](const RunConfig& c) {
         return std::optional<std::string>(c.format == Format::kCsv ? "csv" : "json");
       },
       [](RunConfig& c, std::string_view v) {
         if (v == "csv") {
           c.format = Format::kCsv;
         } else if (v == "json") {
           c.format = Format::kJson;
         } else {
           throw ConfigError("format must be csv or json, got '" + std::string(v) + "'");
         }
       }},
      Number("memory_budget", &RunConfig::memory_budget),
      Number("flex_cap", &RunConfig::flex_cap),
      Number("samples", &RunConfig::samples),
      Text("mode", &RunConfig::mode),
      Number("n", &RunConfig::n),
      Number("m", &RunConfig::m),
      Number("h", &RunConfig::h),
      Number("c", &RunConfig::c),
      Number("k", &RunConfig::k),
      Number("r", &RunConfig::r),
      Number("max_n", &RunConfig::max_n),
      Number("horizon", &RunConfig::horizon),
      Number("window", &RunConfig::window),
      List("grid", &RunConfig::grid),
      List("l_grid", &RunConfig::l_grid),
      List("levels", &RunConfig::levels),
      List("slices", &RunConfig::slices),
      List("nus", &RunConfig::nus),
      Number("alpha", &RunConfig::alpha),
      Number("dt", &RunConfig::dt),
      Number("t_max", &RunConfig::t_max),
      Number("bins", &RunConfig::bins),
      Number("bootstrap", &RunConfig::bootstrap),
      Number("bm_samples", &RunConfig::bm_samples),
      Number("attempts", &RunConfig::attempts),
      Flag("empty", &RunConfig::empty),
      Flag("lossy", &RunConfig::lossy),
      Flag("crossing_correction", &RunConfig::crossing_correction),
      Flag("reflect_v", &RunConfig::reflect_v),
  };
  return fields;
}

}  // namespace

std::string FormatDouble(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::logic_error("to_chars failed");
  return std::string(buf, ptr);
}

std::string FormatConfig(const RunConfig& config) {
  std::string out;
  for (const Field& f : Fields()) {
    if (auto v = f.get(config)) out += f.key + " = " + *v + "\n";
  }
  return out;
}

RunConfig ParseConfig(std::string_view text, RunConfig base) {
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    bool found = false;
    for (const Field& f : Fields()) {
      if (f.key == key) {
        f.set(base, value);
        found = true;
        break;
      }
    }
    if (!found) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
  }
  return base;
}

RunConfig LoadConfigFile(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str(), std::move(base));
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const Field& f : Fields()) keys.push_back(f.key);
  return keys;
}

}  // namespace burger::cli
