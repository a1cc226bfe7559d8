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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "burger/cli/app.hpp"
#include "burger/cli/commands.hpp"
#include "burger/cli/config.hpp"

namespace burger::cli {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Call(std::vector<std::string> args) {
  args.insert(args.begin(), "burger");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// CSV without the leading "# build=... seed=..." line.
std::string Body(const std::string& csv) { return csv.substr(csv.find('\n') + 1); }

TEST_SUITE("cli") {

TEST_CASE("oracle empty-word table starts at (1+p)/8") {
  const Result r = Call({"oracle", "--p", "0.3333333333", "--empty", "--max-n", "22"});
  REQUIRE(r.code == 0);
  std::istringstream lines(Body(r.out));
  std::string header;
  std::string first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "two_n,probability");
  REQUIRE(first.rfind("2,", 0) == 0);
  CHECK(std::stod(first.substr(2)) == doctest::Approx((1 + 0.3333333333) / 8).epsilon(1e-15));
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 10);
}

TEST_CASE("missing --p is a usage error") {
  const Result r = Call({"tail"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("--p") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("bad input is a usage error") {
  CHECK(Call({"--p", "0.7", "oracle"}).code == kExitUsage);
  CHECK(Call({"--p", "0.3", "nonsense"}).code == kExitUsage);
  CHECK(Call({"--p", "0.3", "tail", "--event", "Q"}).code == kExitUsage);
  CHECK(Call({"--p", "0.3", "--config", "/nonexistent/file", "oracle"}).code == kExitUsage);
  CHECK(Call({"--p", "0.3", "oracle", "--empty", "--max-n", "7"}).code == kExitUsage);
}

TEST_CASE("resource exhaustion exits 3") {
  CHECK(Call({"--p", "0.3", "--memory-budget", "1024", "oracle", "--n", "20"}).code ==
        kExitResource);
  CHECK(Call({"--p", "0.3", "conditioned", "--n", "256", "--h", "2", "--c", "2", "--window",
              "0", "--attempts", "1000"})
            .code == kExitResource);
}

TEST_CASE("selftest passes") {
  const Result r = Call({"selftest"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  for (const SelfCheck& c : RunSelfChecks()) CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("config text round-trips") {
  RunConfig c;
  c.command = "tail";
  c.p = 1.0 / 3.0;
  c.seed = 18446744073709551615ULL;
  c.threads = 4;
  c.format = Format::kJson;
  c.mode = "J";
  c.grid = {256, 512, 1024};
  c.levels = {0.1, 1e-300, -2.5};
  c.alpha = 0.1 + 0.2;
  c.lossy = true;
  c.reflect_v = false;
  c.output = "out.csv";
  CHECK(ParseConfig(FormatConfig(c)) == c);
  CHECK(ParseConfig(FormatConfig(RunConfig{})) == RunConfig{});
  CHECK_THROWS_AS(ParseConfig("nope = 1"), ConfigError);
  CHECK_THROWS_AS(ParseConfig("p 0.3"), ConfigError);
  CHECK_THROWS_AS(ParseConfig("threads = 1.5"), ConfigError);
  const RunConfig d = ParseConfig("# comment\n  p = 0.25  # trailing\n\nempty = 1\n");
  CHECK(d.p == 0.25);
  CHECK(d.empty);
}

TEST_CASE("flags override the config file") {
  const std::string path = "burger_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "p = 0.2\nseed = 5\nsamples = 1000\nmode = synthetic\ngrid = 2,4,8\n";
  }
  const Result r = Call({"--config", path, "--p", "0.3", "--format", "json", "tail",
                         "--bootstrap", "0"});
  std::remove(path.c_str());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report_version"] == 1);
  CHECK(j["experiment"] == "tail");
  CHECK(j["config"]["p"] == 0.3);
  CHECK(j["config"]["seed"] == 5);
  CHECK(j["config"]["samples"] == 1000);
  CHECK(j["payload"]["event"] == "synthetic");
}

TEST_CASE("the seed is echoed even when drawn from the clock") {
  const Result r = Call({"--p", "0.3", "--format", "json", "tail", "--event", "synthetic",
                         "--samples", "1000", "--grid", "2,4", "--bootstrap", "0"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["config"].contains("seed"));
  const Result csv = Call({"--p", "0.3", "--seed", "77", "oracle", "--n", "2"});
  CHECK(csv.out.rfind("# build=", 0) == 0);
  CHECK(csv.out.find("seed=77") != std::string::npos);
}

TEST_CASE("reports do not depend on the thread count") {
  std::string reference;
  for (const char* threads : {"1", "4", "16"}) {
    const Result r = Call({"--p", "0.3", "--seed", "9", "--threads", threads, "--batch-size",
                           "512", "tail", "--event", "I", "--samples", "20000", "--grid",
                           "8,16,32", "--bootstrap", "10"});
    REQUIRE(r.code == 0);
    if (reference.empty()) reference = r.out;
    CHECK(r.out == reference);
  }
}

TEST_CASE("output goes to a file") {
  const std::string path = "burger_cli_test.csv";
  REQUIRE(Call({"--p", "0.3", "--seed", "1", "-o", path, "oracle", "--n", "2"}).code == 0);
  std::ifstream f(path);
  std::stringstream text;
  text << f.rdbuf();
  std::remove(path.c_str());
  CHECK(text.str().find("n,h,c,probability") != std::string::npos);
}

}  // TEST_SUITE

}  // namespace
}  // namespace burger::cli
