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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "marelay/cli.hpp"

using namespace marelay;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "marelay");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / "marelay_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write(const fs::path &p, const std::string &text) { std::ofstream(p) << text; }

const char *kTinyConfig = R"(
relaying: df
sweep: {axis: snr_db, values: [5, 10]}
system: {num_antennas: 2}
region: {side_length: 3}
campaign: {trials: 2, base_seed: 3, schemes: [proposed, fpa, bound_deterministic]}
)";

} // namespace

TEST(Cli, BoundsSinglePathExamples) {
    const CliRun df = cli({"bounds", "--relaying", "df", "--l", "1", "--n", "1", "--snr-db", "10"});
    EXPECT_EQ(df.code, kExitOk);
    EXPECT_NE(df.out.find("DF AAR bound 1.292481"), std::string::npos) << df.out;
    EXPECT_NE(df.out.find("alpha1 5.000000"), std::string::npos) << df.out;
    const CliRun af = cli({"bounds", "--relaying", "af", "--l", "1", "--n", "1", "--snr-db", "10"});
    EXPECT_EQ(af.code, kExitOk);
    EXPECT_NE(af.out.find("AF AAR bound 1.263273"), std::string::npos) << af.out;
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"bounds", "--frobnicate"}).code, kExitUsage);
    EXPECT_EQ(cli({"bounds", "--relaying", "xf"}).code, kExitUsage);
    EXPECT_EQ(cli({"bounds", "--l", "0"}).code, kExitUsage);
    EXPECT_EQ(cli({"run", "--config", "x.yaml"}).code, kExitUsage);
    EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, ValidateFastPasses) {
    const CliRun r = cli({"validate", "--fast"});
    EXPECT_EQ(r.code, kExitOk) << r.out;
    EXPECT_EQ(r.out.find("[FAIL]"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("[PASS]"), std::string::npos);
}

TEST(Cli, RunWritesSummaryAndTrials) {
    const fs::path cfg = scratch("tiny.yaml"), out = scratch("tiny.csv"), trials = scratch("tiny_trials.csv");
    write(cfg, kTinyConfig);
    const CliRun r = cli({"--threads", "2", "run", "--config", cfg.string(), "--out", out.string(), "--trials-out",
                       trials.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const std::string csv = slurp(out);
    EXPECT_EQ(csv.rfind("sweep_name,sweep_value,scheme,mean_rate_bps_hz,std_err,trials,base_seed\n", 0), 0u);
    EXPECT_NE(csv.find("snr_db,5,proposed,"), std::string::npos) << csv;
    EXPECT_NE(csv.find(",2,3\n"), std::string::npos) << csv;
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 3);
    const std::string per_trial = slurp(trials);
    EXPECT_EQ(std::count(per_trial.begin(), per_trial.end(), '\n'), 1 + 2 * 2);

    const fs::path out1 = scratch("tiny1.csv");
    ASSERT_EQ(cli({"--threads", "1", "run", "--config", cfg.string(), "--out", out1.string()}).code, kExitOk);
    EXPECT_EQ(slurp(out1), csv);
}

TEST(Cli, ThreadsFromEnvironment) {
    const fs::path cfg = scratch("env.yaml"), out = scratch("env.csv");
    write(cfg, kTinyConfig);
    ::setenv(kThreadsEnv, "bogus", 1);
    EXPECT_EQ(cli({"run", "--config", cfg.string(), "--out", out.string()}).code, kExitUsage);
    ::setenv(kThreadsEnv, "2", 1);
    EXPECT_EQ(cli({"run", "--config", cfg.string(), "--out", out.string()}).code, kExitOk);
    ::unsetenv(kThreadsEnv);
}

TEST(Cli, ConfigAndIoErrors) {
    const fs::path bad = scratch("bad.yaml"), out = scratch("bad.csv");
    write(bad, "sweep: {axis: snr_db, values: [1]}\nwhat: 1\n");
    const CliRun r = cli({"run", "--config", bad.string(), "--out", out.string()});
    EXPECT_EQ(r.code, kExitConfig);
    EXPECT_NE(r.err.find("unknown key 'what'"), std::string::npos) << r.err;
    EXPECT_EQ(cli({"run", "--config", scratch("missing.yaml").string(), "--out", out.string()}).code, kExitConfig);

    const fs::path cfg = scratch("io.yaml");
    write(cfg, kTinyConfig);
    EXPECT_EQ(cli({"run", "--config", cfg.string(), "--out", "/nonexistent/dir/x.csv"}).code, kExitIo);
}

TEST(Cli, FailingSweepValueExitsNonZero) {
    const fs::path cfg = scratch("fail.yaml"), out = scratch("fail.csv");
    write(cfg, R"(
sweep: {axis: region_size, values: [0.3, 3]}
system: {num_antennas: 4}
campaign: {trials: 1, schemes: [fpa]}
)");
    const CliRun r = cli({"run", "--config", cfg.string(), "--out", out.string()});
    EXPECT_EQ(r.code, kExitFailure);
    EXPECT_NE(slurp(out).find("region_size,0.3,error,nan,nan,0,"), std::string::npos);
    EXPECT_NE(r.err.find("region_size = 0.3"), std::string::npos) << r.err;
}

TEST(Cli, LandscapeWritesTheGrid) {
    const fs::path out = scratch("land.csv");
    const CliRun r = cli({"landscape", "--a", "1", "--step", "0.1", "--seed", "4", "--out", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const std::string csv = slurp(out);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), ','), 10 * 9);
    EXPECT_NE(r.out.find("10x10 grid"), std::string::npos) << r.out;
}

TEST(Cli, SingleTrialRunHasOneRowPerValueAndScheme) {
    const fs::path cfg = scratch("one.yaml"), out = scratch("one.csv");
    write(cfg, R"(
sweep: {axis: num_antennas, values: [1, 2, 3]}
region: {side_length: 3}
campaign: {trials: 1, schemes: [fpa, proposed]}
)");
    ASSERT_EQ(cli({"run", "--config", cfg.string(), "--out", out.string()}).code, kExitOk);
    const std::string csv = slurp(out);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 2);
    EXPECT_NE(csv.find("\nnum_antennas,3,fpa,"), std::string::npos) << csv;
    EXPECT_NE(csv.find(",0,1,1\n"), std::string::npos) << csv;
}
