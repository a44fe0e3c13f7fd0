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

// YAML campaign files. See configs/example.yaml for the full grammar; every
// key is optional except sweep.axis and sweep.values, and unknown keys are
// rejected.

#include <string>
#include <string_view>

#include "marelay/experiments.hpp"

namespace marelay {

/// Malformed or inconsistent configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

CampaignConfig parse_config(std::string_view yaml_text);
CampaignConfig load_config(const std::string &path);

} // namespace marelay
