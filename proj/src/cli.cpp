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

#include "marelay/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <omp.h>

#include "marelay/bounds.hpp"
#include "marelay/config.hpp"
#include "marelay/experiments.hpp"
#include "marelay/validation.hpp"

namespace marelay {

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

int threads_from_env() {
    const char *v = std::getenv(kThreadsEnv);
    if (!v || !*v)
        return 0;
    char *end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 0 || n > 4096)
        throw UsageError(fmt::format("{}='{}' is not a thread count", kThreadsEnv, v));
    return static_cast<int>(n);
}

std::ofstream open_out(const std::string &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError(fmt::format("cannot open '{}' for writing", path));
    return f;
}

void finish(std::ofstream &f, const std::string &path) {
    f.flush();
    if (!f)
        throw IoError(fmt::format("error writing '{}'", path));
}

int cmd_run(const std::string &config_path, const std::string &out_path, const std::string &trials_path,
            int threads, std::ostream &err) {
    const CampaignConfig config = load_config(config_path);
    const CampaignResult result = run_campaign(config, threads);
    std::ofstream f = open_out(out_path);
    write_summary_csv(f, result.rows);
    finish(f, out_path);
    if (!trials_path.empty()) {
        std::ofstream t = open_out(trials_path);
        write_trials_csv(t, config, result.trials);
        finish(t, trials_path);
    }
    for (const CampaignError &e : result.errors)
        fmt::print(err, "error: {} = {:.9g}, trial {}: {}\n", to_string(config.axis), e.sweep_value, e.trial_index,
                   e.message);
    return result.errors.empty() ? kExitOk : kExitFailure;
}

int cmd_bounds(const std::string &relaying, std::size_t L, int N, double snr_db, double rho_sq, std::ostream &out) {
    const SystemParams params = SystemParams::from_snr_db(N, snr_db);
    if (relaying == "df") {
        const DfAarBound b = aar_df_upper(L, L, rho_sq, rho_sq, params);
        fmt::print(out, "alpha1 {:.6f}\nalpha2 {:.6f}\nI1 {:.6f}\nI2 {:.6f}\nDF AAR bound {:.6f}\n", b.alpha1, b.alpha2,
                   b.i1, b.i2, b.rate);
    } else {
        const AarParams a = aar_params(L, L, rho_sq, rho_sq, params);
        fmt::print(out, "V1 {:.6f}\nV2 {:.6f}\nAF AAR bound {:.6f}\n", a.v1, a.v2,
                   aar_af_upper(L, L, rho_sq, rho_sq, params));
    }
    return kExitOk;
}

int cmd_landscape(double a, double step, std::uint64_t seed, std::size_t L, const std::string &out_path,
                  std::ostream &out) {
    Region region;
    region.side_length = a;
    const PathSet paths = sample_paths(L, 1.0, derive_seed(seed, {1}));
    const GridSearchResult g = grid_exhaustive(paths, region, step);
    std::ofstream f = open_out(out_path);
    g.grid.write_csv(f);
    finish(f, out_path);
    fmt::print(out, "{}x{} grid, best gain {:.9g} at ({:.9g}, {:.9g}), bound {:.9g}\n", g.grid.rows, g.grid.cols,
               g.best_gain, g.best_position.x, g.best_position.y, gain_upper_bound(paths, 1));
    return kExitOk;
}

int cmd_validate(bool fast, std::ostream &out) {
    bool ok = true;
    for (const ValidationCheck &c : run_validation(fast)) {
        fmt::print(out, "[{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
        ok = ok && c.passed;
    }
    return ok ? kExitOk : kExitFailure;
}

} // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Movable-antenna relay simulator"};
    app.require_subcommand(1);
    int threads = -1;
    app.add_option("--threads", threads, fmt::format("worker threads (default: ${} or all cores)", kThreadsEnv))
        ->check(CLI::NonNegativeNumber);

    std::string config_path, out_path, trials_path;
    auto *run = app.add_subcommand("run", "execute a campaign and write the summary CSV");
    run->add_option("--config", config_path, "campaign YAML file")->required();
    run->add_option("--out", out_path, "summary CSV")->required();
    run->add_option("--trials-out", trials_path, "optional per-trial CSV");

    std::string relaying = "df";
    std::size_t L = 5;
    int N = 1;
    double snr_db = 10.0, rho_sq = 1.0;
    auto *bounds = app.add_subcommand("bounds", "print the average-rate upper bounds");
    bounds->add_option("--relaying", relaying, "df or af")->check(CLI::IsMember({"df", "af"}));
    bounds->add_option("--l", L, "paths per hop")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
    bounds->add_option("--n", N, "relay antennas")->check(CLI::Range(1, 1 << 20));
    bounds->add_option("--snr-db", snr_db, "P / sigma^2 in dB");
    bounds->add_option("--rho-sq", rho_sq, "average path power")->check(CLI::PositiveNumber);

    double a = 4.0, step = 0.01;
    std::uint64_t seed = 1;
    std::string landscape_out;
    auto *landscape = app.add_subcommand("landscape", "write the single-antenna gain over the region as CSV");
    landscape->add_option("--a", a, "region side in wavelengths")->check(CLI::PositiveNumber);
    landscape->add_option("--step", step, "grid pitch in wavelengths")->check(CLI::PositiveNumber);
    landscape->add_option("--seed", seed, "realization seed");
    landscape->add_option("--l", L, "number of paths")->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
    landscape->add_option("--out", landscape_out, "grid CSV")->required();

    bool fast = false;
    auto *validate = app.add_subcommand("validate", "run the built-in consistency checks");
    validate->add_flag("--fast", fast, "fewer random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    }

    try {
        if (threads < 0)
            threads = threads_from_env();
        if (threads > 0)
            omp_set_num_threads(threads);

        if (*run)
            return cmd_run(config_path, out_path, trials_path, threads, err);
        if (*bounds)
            return cmd_bounds(relaying, L, N, snr_db, rho_sq, out);
        if (*landscape)
            return cmd_landscape(a, step, seed, L, landscape_out, out);
        return cmd_validate(fast, out);
    } catch (const UsageError &e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const ConfigError &e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitConfig;
    } catch (const InfeasibleError &e) {
        fmt::print(err, "error: infeasible parameters: {}\n", e.what());
        return kExitInfeasible;
    } catch (const IoError &e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitIo;
    } catch (const std::exception &e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitFailure;
    }
}

} // namespace marelay
