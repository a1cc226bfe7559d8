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

// Subcommand implementations. Each takes a fully resolved config (seed set)
// and returns the report; argument parsing lives in app.cpp.

#ifndef BURGER_CLI_COMMANDS_HPP_
#define BURGER_CLI_COMMANDS_HPP_

#include <string>
#include <vector>

#include "burger/cli/config.hpp"
#include "burger/cli/report.hpp"

namespace burger::cli {

Report Simulate(const RunConfig& config);
Report Tail(const RunConfig& config);
Report LocalLimit(const RunConfig& config);
Report Conditioned(const RunConfig& config);
Report EmptyWord(const RunConfig& config);
Report Oracle(const RunConfig& config);
Report BmReference(const RunConfig& config);

struct SelfCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};
/// The fixed example suite run by `selftest`.
std::vector<SelfCheck> RunSelfChecks();
Report SelfTest(const RunConfig& config);

/// Dispatches on config.command. Throws ConfigError for unknown commands.
Report RunCommand(const RunConfig& config);

}  // namespace burger::cli

#endif  // BURGER_CLI_COMMANDS_HPP_
