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

#include <string>

#include "marelay/types.hpp"

namespace marelay::detail {

// Enabled by the MARELAY_CHECK_INVARIANTS build option (on for test builds).
#ifdef MARELAY_CHECK_INVARIANTS
inline constexpr bool kCheckInvariants = true;
#else
inline constexpr bool kCheckInvariants = false;
#endif

inline void check_invariant(bool ok, const char *what) {
    if constexpr (kCheckInvariants) {
        if (!ok)
            throw InvariantViolation(std::string("invariant violated: ") + what);
    }
}

} // namespace marelay::detail
