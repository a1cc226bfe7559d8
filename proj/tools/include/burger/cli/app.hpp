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

#ifndef BURGER_CLI_APP_HPP_
#define BURGER_CLI_APP_HPP_

#include <ostream>

namespace burger::cli {

// Exit codes: 0 ok, 1 internal error or failed selftest, 2 usage or config
// error, 3 resource limit or sampler budget exhausted.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace burger::cli

#endif  // BURGER_CLI_APP_HPP_
