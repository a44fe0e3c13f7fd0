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

#include "marelay/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace marelay {

namespace {

[[noreturn]] void fail(const std::string &msg) { throw ConfigError("config: " + msg); }

void allow_keys(const YAML::Node &node, const std::string &where, std::initializer_list<std::string_view> keys) {
    if (!node.IsMap())
        fail(fmt::format("'{}' must be a mapping", where));
    for (const auto &kv : node) {
        const auto key = kv.first.as<std::string>();
        bool known = false;
        for (std::string_view k : keys)
            known = known || k == key;
        if (!known)
            fail(fmt::format("unknown key '{}' in '{}'", key, where));
    }
}

template <typename T> T scalar(const YAML::Node &node, const std::string &where) {
    if (!node.IsScalar())
        fail(fmt::format("'{}' must be a scalar", where));
    try {
        return node.as<T>();
    } catch (const YAML::BadConversion &) {
        fail(fmt::format("'{}' has an invalid value '{}'", where, node.Scalar()));
    }
}

template <typename T> void read(const YAML::Node &section, const char *key, const std::string &where, T &dst) {
    if (const YAML::Node n = section[key])
        dst = scalar<T>(n, where + "." + key);
}

std::size_t read_count(const YAML::Node &section, const char *key, const std::string &where, std::size_t dflt) {
    if (const YAML::Node n = section[key]) {
        const auto v = scalar<long long>(n, where + "." + key);
        if (v < 1)
            fail(fmt::format("'{}.{}' must be at least 1, got {}", where, key, v));
        return static_cast<std::size_t>(v);
    }
    return dflt;
}

CampaignConfig from_yaml(const YAML::Node &root) {
    if (!root || root.IsNull())
        fail("empty document");
    allow_keys(root, "<root>", {"relaying", "sweep", "system", "channel", "region", "optimizer", "baselines", "campaign"});
    CampaignConfig c;

    if (const YAML::Node n = root["relaying"]) {
        const auto s = scalar<std::string>(n, "relaying");
        if (s == "df" || s == "DF")
            c.relaying = Relaying::DF;
        else if (s == "af" || s == "AF")
            c.relaying = Relaying::AF;
        else
            fail(fmt::format("'relaying' must be df or af, got '{}'", s));
    }

    const YAML::Node sweep = root["sweep"];
    if (!sweep)
        fail("missing section 'sweep'");
    allow_keys(sweep, "sweep", {"axis", "values"});
    if (!sweep["axis"])
        fail("missing key 'sweep.axis'");
    const auto axis = scalar<std::string>(sweep["axis"], "sweep.axis");
    const auto parsed_axis = parse_sweep_axis(axis);
    if (!parsed_axis)
        fail(fmt::format("'sweep.axis' must be region_size, snr_db or num_antennas, got '{}'", axis));
    c.axis = *parsed_axis;
    const YAML::Node values = sweep["values"];
    if (!values)
        fail("missing key 'sweep.values'");
    if (!values.IsSequence() || values.size() == 0)
        fail("'sweep.values' must be a non-empty list");
    c.sweep_values.clear();
    for (std::size_t i = 0; i < values.size(); ++i)
        c.sweep_values.push_back(scalar<double>(values[i], fmt::format("sweep.values[{}]", i)));

    bool explicit_power = false;
    if (const YAML::Node s = root["system"]) {
        allow_keys(s, "system", {"num_antennas", "snr_db", "p_source", "p_relay", "noise_relay", "noise_dest"});
        read(s, "num_antennas", "system", c.system.num_antennas);
        read(s, "noise_relay", "system", c.system.noise_relay);
        read(s, "noise_dest", "system", c.system.noise_dest);
        explicit_power = s["p_source"] || s["p_relay"];
        read(s, "p_source", "system", c.system.p_source);
        read(s, "p_relay", "system", c.system.p_relay);
        if (s["snr_db"]) {
            if (explicit_power)
                fail("'system.snr_db' conflicts with 'system.p_source' / 'system.p_relay'");
            const auto db = scalar<double>(s["snr_db"], "system.snr_db");
            c.system.p_source = c.system.noise_relay * std::pow(10.0, db / 10.0);
            c.system.p_relay = c.system.noise_dest * std::pow(10.0, db / 10.0);
        }
    }
    if (c.axis == SweepAxis::SnrDb && explicit_power)
        fail("an snr_db sweep sets the powers; remove 'system.p_source' / 'system.p_relay'");

    if (const YAML::Node s = root["channel"]) {
        allow_keys(s, "channel", {"paths_rx", "paths_tx", "rho1sq", "rho2sq"});
        c.paths_rx = read_count(s, "paths_rx", "channel", c.paths_rx);
        c.paths_tx = read_count(s, "paths_tx", "channel", c.paths_tx);
        read(s, "rho1sq", "channel", c.rho1sq);
        read(s, "rho2sq", "channel", c.rho2sq);
    }

    if (const YAML::Node s = root["region"]) {
        allow_keys(s, "region", {"side_length", "min_spacing", "wavelength"});
        read(s, "side_length", "region", c.region_size);
        read(s, "min_spacing", "region", c.min_spacing);
        read(s, "wavelength", "region", c.wavelength);
    }

    if (const YAML::Node s = root["optimizer"]) {
        allow_keys(s, "optimizer", {"eta_init", "eta_min", "shrink", "max_iters", "ao_tol", "max_ao_rounds", "init"});
        read(s, "eta_init", "optimizer", c.schedule.eta_init);
        read(s, "eta_min", "optimizer", c.schedule.eta_min);
        read(s, "shrink", "optimizer", c.schedule.shrink);
        read(s, "max_iters", "optimizer", c.schedule.max_iters);
        read(s, "ao_tol", "optimizer", c.schedule.ao_tol);
        read(s, "max_ao_rounds", "optimizer", c.schedule.max_ao_rounds);
        if (const YAML::Node n = s["init"]) {
            const auto v = scalar<std::string>(n, "optimizer.init");
            if (v == "uniform_grid")
                c.init = InitMode::UniformGrid;
            else if (v == "random")
                c.init = InitMode::Random;
            else
                fail(fmt::format("'optimizer.init' must be uniform_grid or random, got '{}'", v));
        }
    }

    if (const YAML::Node s = root["baselines"]) {
        allow_keys(s, "baselines", {"as_mode", "grid_step"});
        if (const YAML::Node n = s["as_mode"]) {
            const auto v = scalar<std::string>(n, "baselines.as_mode");
            if (v == "independent")
                c.as_mode = SubsetMode::Independent;
            else if (v == "shared")
                c.as_mode = SubsetMode::Shared;
            else
                fail(fmt::format("'baselines.as_mode' must be independent or shared, got '{}'", v));
        }
        read(s, "grid_step", "baselines", c.grid_step);
    }

    if (const YAML::Node s = root["campaign"]) {
        allow_keys(s, "campaign", {"trials", "base_seed", "schemes", "check_invariants", "threads"});
        read(s, "trials", "campaign", c.trials);
        read(s, "base_seed", "campaign", c.base_seed);
        read(s, "check_invariants", "campaign", c.check_invariants);
        read(s, "threads", "campaign", c.threads);
        if (const YAML::Node n = s["schemes"]) {
            if (!n.IsSequence() || n.size() == 0)
                fail("'campaign.schemes' must be a non-empty list");
            c.schemes.clear();
            for (std::size_t i = 0; i < n.size(); ++i) {
                const auto name = scalar<std::string>(n[i], fmt::format("campaign.schemes[{}]", i));
                const auto sch = parse_scheme(name);
                if (!sch)
                    fail(fmt::format("unknown scheme '{}' (expected proposed, fpa, as, otpa, grid_exhaustive, "
                                     "bound_deterministic or bound_aar)",
                                     name));
                c.schemes.push_back(*sch);
            }
        }
    }

    try {
        c.validate();
    } catch (const std::invalid_argument &e) {
        fail(e.what());
    }
    return c;
}

} // namespace

CampaignConfig parse_config(std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception &e) {
        fail(fmt::format("YAML syntax error: {}", e.what()));
    }
    return from_yaml(root);
}

CampaignConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(fmt::format("config: cannot open '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace marelay
