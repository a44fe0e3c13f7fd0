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

// Built-in self checks behind `marelay validate`.

#include <string>
#include <vector>

namespace marelay {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Gradient vs finite differences, AF beamformer vs the vectorized solve,
/// average-bound integrals vs quadrature, the sum-of-Rayleigh second moment,
/// and rates vs the deterministic bounds. `fast` uses fewer random instances.
std::vector<ValidationCheck> run_validation(bool fast);

} // namespace marelay
