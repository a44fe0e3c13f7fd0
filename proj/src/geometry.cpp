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

#include "marelay/types.hpp"

#include <fmt/format.h>

namespace marelay {

void Region::validate() const {
    if (!(side_length > 0.0) || !(min_spacing > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument(fmt::format("Region: side_length ({}), min_spacing ({}) and wavelength ({}) must be positive",
                                                side_length, min_spacing, wavelength));
}

bool inside_region(Vec2 p, const Region &region) {
    const double h = region.half();
    return p.x >= -h && p.x <= h && p.y >= -h && p.y <= h;
}

bool spacing_ok(Vec2 p, const Placement &placement, std::size_t skip, const Region &region) {
    const double limit = region.min_spacing * (1.0 - kSpacingRelTol);
    for (std::size_t m = 0; m < placement.size(); ++m) {
        if (m == skip)
            continue;
        if ((p - placement[m]).norm() < limit)
            return false;
    }
    return true;
}

bool is_feasible(const Placement &placement, const Region &region) {
    for (std::size_t n = 0; n < placement.size(); ++n) {
        if (!inside_region(placement[n], region) || !spacing_ok(placement[n], placement, n, region))
            return false;
    }
    return true;
}

void require_feasible(const Placement &placement, const Region &region, const std::string &what) {
    if (placement.empty())
        throw InfeasibleError(what + ": placement is empty");
    for (std::size_t n = 0; n < placement.size(); ++n) {
        if (!inside_region(placement[n], region))
            throw InfeasibleError(fmt::format("{}: antenna {} at ({}, {}) lies outside the {}x{} region", what, n,
                                              placement[n].x, placement[n].y, region.side_length, region.side_length));
        if (!spacing_ok(placement[n], placement, n, region))
            throw InfeasibleError(fmt::format("{}: antenna {} is closer than D = {} to another antenna", what, n,
                                              region.min_spacing));
    }
}

} // namespace marelay
