// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>

namespace marelay {

/// Name of the environment variable holding the default worker count.
inline constexpr const char *kThreadsEnv = "MARELAY_THREADS";

/// Exit codes of cli_main.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,     ///< validation failed, or a sweep value errored
    kExitUsage = 2,       ///< unknown flag, missing or malformed argument
    kExitConfig = 3,      ///< unreadable or invalid config file
    kExitInfeasible = 4,  ///< parameters admit no feasible placement
    kExitIo = 5,          ///< output file could not be written
};

/// Entry point of the `marelay` tool; diagnostics go to `err`.
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace marelay
