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

// Seeded Monte Carlo campaigns.
//
// A campaign sweeps one parameter (region size, SNR or antenna count) and at
// each sweep value runs `trials` independent channel realizations. Every
// requested scheme is evaluated on the same realization of a trial, so the
// per-trial differences between schemes are paired.
//
// Trial seed: derive_seed(base_seed, {bits(sweep_value), trial_index}), with
// bits() the IEEE-754 pattern of the sweep value (-0 folded into +0). The
// source->relay paths use derive_seed(seed, {1}), relay->destination
// derive_seed(seed, {2}), random initial placements derive_seed(seed, {3}).
// Adding or reordering sweep values leaves every other trial untouched.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "marelay/baselines.hpp"
#include "marelay/channel.hpp"
#include "marelay/optimizer.hpp"
#include "marelay/rate.hpp"

namespace marelay {

enum class SweepAxis { RegionSize, SnrDb, NumAntennas };

enum class Scheme { Proposed, Fpa, As, Otpa, GridExhaustive, BoundDeterministic, BoundAar };

inline constexpr std::size_t kNumSchemes = 7;
inline constexpr std::array<Scheme, kNumSchemes> kAllSchemes = {
    Scheme::Proposed, Scheme::Fpa,           Scheme::As,      Scheme::Otpa,
    Scheme::GridExhaustive, Scheme::BoundDeterministic, Scheme::BoundAar,
};

std::string_view to_string(SweepAxis a);
std::string_view to_string(Scheme s);
std::optional<SweepAxis> parse_sweep_axis(std::string_view s);
std::optional<Scheme> parse_scheme(std::string_view s);

/// Everything a campaign needs. Lengths in the config are multiples of the
/// wavelength; powers are linear with the noise variances they are paired with.
struct CampaignConfig {
    Relaying relaying = Relaying::DF;

    SweepAxis axis = SweepAxis::SnrDb;
    std::vector<double> sweep_values{10.0};

    SystemParams system;         ///< values not set by the sweep
    std::size_t paths_rx = 5;    ///< L_r
    std::size_t paths_tx = 5;    ///< L_t
    double rho1sq = 1.0;
    double rho2sq = 1.0;

    double wavelength = 1.0;     ///< meters
    double region_size = 10.0;   ///< A / lambda
    double min_spacing = 0.5;    ///< D / lambda

    PgaSchedule schedule;        ///< eta_init, eta_min in wavelengths
    InitMode init = InitMode::UniformGrid;
    SubsetMode as_mode = SubsetMode::Independent;
    double grid_step = 0.01;     ///< grid pitch / lambda

    int trials = 100;
    std::uint64_t base_seed = 1;
    std::vector<Scheme> schemes{Scheme::Proposed, Scheme::Fpa};
    bool check_invariants = true;
    int threads = 0;             ///< 0 = OpenMP default

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool wants(Scheme s) const;
    /// Requested schemes in canonical order, without duplicates.
    std::vector<Scheme> ordered_schemes() const;

    /// Concrete parameters at one sweep value.
    SystemParams system_at(double sweep_value) const;
    Region region_at(double sweep_value) const;
};

/// Trial seed for (base_seed, sweep_value, trial_index).
std::uint64_t trial_seed(std::uint64_t base_seed, double sweep_value, std::uint64_t trial_index);

struct TrialPaths {
    PathSet sr;
    PathSet rd;
};

/// The channel realization of a trial seed.
TrialPaths trial_paths(const CampaignConfig &config, std::uint64_t seed);

struct TrialResult {
    std::uint64_t seed = 0;
    double sweep_value = 0.0;
    std::uint64_t trial_index = 0;
    std::array<std::optional<double>, kNumSchemes> rates{}; ///< indexed by Scheme, bits/s/Hz

    std::optional<double> rate(Scheme s) const { return rates[static_cast<std::size_t>(s)]; }
    friend bool operator==(const TrialResult &, const TrialResult &) = default;
};

/// One realization, every requested scheme. With config.check_invariants the
/// dominance relations between schemes are verified and InvariantViolation is
/// thrown on failure.
TrialResult run_trial(const CampaignConfig &config, double sweep_value, std::uint64_t trial_index);

/// Relative and absolute slack of the dominance checks.
inline constexpr double kDominanceTol = 1e-9;

struct SummaryRow {
    std::string sweep_name;
    double sweep_value = 0.0;
    std::string scheme;      ///< "error" for a failed sweep value
    double mean_rate = 0.0;
    double std_err = 0.0;
    int trials = 0;
    std::uint64_t base_seed = 0;
};

struct CampaignError {
    double sweep_value = 0.0;
    std::uint64_t trial_index = 0;
    std::string message;
};

struct CampaignResult {
    std::vector<SummaryRow> rows;
    std::vector<TrialResult> trials; ///< successful sweep values only, ordered by (sweep value, trial)
    std::vector<CampaignError> errors;
};

struct MeanStdErr {
    double mean = 0.0;
    double std_err = 0.0;
};

/// Mean and sd / sqrt(n) (sample sd, n - 1 denominator; 0 for n = 1),
/// accumulated in input order.
MeanStdErr aggregate(const std::vector<double> &values);

/// Summary rows from per-trial results, in sweep-value then scheme order.
std::vector<SummaryRow> summarize(const CampaignConfig &config, const std::vector<TrialResult> &trials);

/// Runs all trials, `threads` OpenMP workers (<= 0: config.threads, then the
/// OpenMP default). Output does not depend on the worker count.
CampaignResult run_campaign(const CampaignConfig &config, int threads = 0);

/// Header plus one row per SummaryRow, 9 significant digits.
void write_summary_csv(std::ostream &os, const std::vector<SummaryRow> &rows);

/// Per-trial rates at 17 significant digits (exact round trip).
void write_trials_csv(std::ostream &os, const CampaignConfig &config, const std::vector<TrialResult> &trials);
std::vector<TrialResult> read_trials_csv(std::istream &is);

} // namespace marelay
