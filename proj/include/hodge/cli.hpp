// Copyright 2026 The Hodge Allocation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HODGE_CLI_HPP
#define HODGE_CLI_HPP

#include <ostream>
#include <span>
#include <string>

namespace hodge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputationError = 1;
inline constexpr int kExitUsageError = 2;

// Runs one hodge-alloc subcommand. `args` excludes the program name.
int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hodge

#endif  // HODGE_CLI_HPP
