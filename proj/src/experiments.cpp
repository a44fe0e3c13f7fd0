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

#include "marelay/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <omp.h>

#include "marelay/bounds.hpp"

namespace marelay {

std::string_view to_string(SweepAxis a) {
    switch (a) {
    case SweepAxis::RegionSize:
        return "region_size";
    case SweepAxis::SnrDb:
        return "snr_db";
    case SweepAxis::NumAntennas:
        return "num_antennas";
    }
    return "?";
}

std::string_view to_string(Scheme s) {
    switch (s) {
    case Scheme::Proposed:
        return "proposed";
    case Scheme::Fpa:
        return "fpa";
    case Scheme::As:
        return "as";
    case Scheme::Otpa:
        return "otpa";
    case Scheme::GridExhaustive:
        return "grid_exhaustive";
    case Scheme::BoundDeterministic:
        return "bound_deterministic";
    case Scheme::BoundAar:
        return "bound_aar";
    }
    return "?";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view s) {
    for (SweepAxis a : {SweepAxis::RegionSize, SweepAxis::SnrDb, SweepAxis::NumAntennas})
        if (to_string(a) == s)
            return a;
    return std::nullopt;
}

std::optional<Scheme> parse_scheme(std::string_view s) {
    for (Scheme x : kAllSchemes)
        if (to_string(x) == s)
            return x;
    return std::nullopt;
}

bool CampaignConfig::wants(Scheme s) const { return std::find(schemes.begin(), schemes.end(), s) != schemes.end(); }

std::vector<Scheme> CampaignConfig::ordered_schemes() const {
    std::vector<Scheme> out;
    for (Scheme s : kAllSchemes)
        if (wants(s))
            out.push_back(s);
    return out;
}

SystemParams CampaignConfig::system_at(double v) const {
    SystemParams p = system;
    if (axis == SweepAxis::SnrDb) {
        const double lin = std::pow(10.0, v / 10.0);
        p.p_source = p.noise_relay * lin;
        p.p_relay = p.noise_dest * lin;
    } else if (axis == SweepAxis::NumAntennas) {
        p.num_antennas = static_cast<int>(v);
    }
    return p;
}

Region CampaignConfig::region_at(double v) const {
    Region r;
    r.wavelength = wavelength;
    r.side_length = (axis == SweepAxis::RegionSize ? v : region_size) * wavelength;
    r.min_spacing = min_spacing * wavelength;
    return r;
}

void CampaignConfig::validate() const {
    const auto bad = [](const std::string &msg) { throw std::invalid_argument(msg); };
    if (trials < 1)
        bad(fmt::format("campaign.trials must be at least 1, got {}", trials));
    if (sweep_values.empty())
        bad("sweep.values must not be empty");
    if (schemes.empty())
        bad("campaign.schemes must not be empty");
    if (paths_rx < 1 || paths_tx < 1)
        bad("channel.paths_rx and channel.paths_tx must be at least 1");
    if (!(rho1sq > 0.0) || !(rho2sq > 0.0))
        bad("channel.rho1sq and channel.rho2sq must be positive");
    if (!(wavelength > 0.0))
        bad("region.wavelength must be positive");
    if (!(grid_step > 0.0))
        bad("baselines.grid_step must be positive");
    if (threads < 0)
        bad("campaign.threads must be >= 0");
    schedule.scaled(wavelength).validate();

    for (double v : sweep_values) {
        if (!std::isfinite(v))
            bad("sweep.values must be finite");
        if (axis == SweepAxis::NumAntennas && (v < 1.0 || v != std::floor(v)))
            bad(fmt::format("num_antennas sweep value {} is not a positive integer", v));
        if (axis == SweepAxis::RegionSize && !(v > 0.0))
            bad(fmt::format("region_size sweep value {} must be positive", v));
        const SystemParams p = system_at(v);
        p.validate();
        region_at(v).validate();
        if (wants(Scheme::GridExhaustive) && p.num_antennas != 1)
            bad(fmt::format("grid_exhaustive requires num_antennas = 1, got {}", p.num_antennas));
        if (wants(Scheme::As) && p.num_antennas > kMaxSelectionAntennas)
            bad(fmt::format("as supports at most {} antennas, got {}", kMaxSelectionAntennas, p.num_antennas));
    }
}

std::uint64_t trial_seed(std::uint64_t base_seed, double sweep_value, std::uint64_t trial_index) {
    const double v = sweep_value == 0.0 ? 0.0 : sweep_value;
    return derive_seed(base_seed, {std::bit_cast<std::uint64_t>(v), trial_index});
}

TrialPaths trial_paths(const CampaignConfig &config, std::uint64_t seed) {
    return {sample_paths(config.paths_rx, config.rho1sq, derive_seed(seed, {1})),
            sample_paths(config.paths_tx, config.rho2sq, derive_seed(seed, {2}))};
}

namespace {

void require(bool ok, const std::string &what) {
    if (!ok)
        throw InvariantViolation(what);
}

bool at_most(double a, double b) { return a <= b + kDominanceTol * (1.0 + std::abs(b)); }

bool non_decreasing(const std::vector<double> &v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1])
            return false;
    return true;
}

Placement pick(const Placement &candidates, const std::vector<std::size_t> &idx) {
    Placement p;
    for (std::size_t i : idx)
        p.push_back(candidates[i]);
    return p;
}

} // namespace

TrialResult run_trial(const CampaignConfig &config, double sweep_value, std::uint64_t trial_index) {
    const SystemParams params = config.system_at(sweep_value);
    const Region region = config.region_at(sweep_value);
    const PgaSchedule schedule = config.schedule.scaled(config.wavelength);
    const double lambda = config.wavelength;
    const bool check = config.check_invariants;
    const Relaying relaying = config.relaying;

    TrialResult out;
    out.seed = trial_seed(config.base_seed, sweep_value, trial_index);
    out.sweep_value = sweep_value;
    out.trial_index = trial_index;

    const TrialPaths paths = trial_paths(config, out.seed);
    const PathSet &sr = paths.sr;
    const PathSet &rd = paths.rd;
    const auto same_realization = [&](Scheme s) {
        if (!check)
            return;
        const TrialPaths again = trial_paths(config, out.seed);
        require(again.sr == sr && again.rd == rd,
                fmt::format("{}: channel realization differs from the trial seed", to_string(s)));
    };
    const auto set = [&](Scheme s, double r) { out.rates[static_cast<std::size_t>(s)] = r; };

    const std::uint64_t init_seed = derive_seed(out.seed, {3});
    const auto initial = [&] { return feasible_init(params.num_antennas, region, config.init, init_seed); };

    // FPA also serves as the reference of the dominance checks.
    std::optional<Placement> fpa;
    std::optional<double> fpa_rate;
    const bool fpa_fits = region.min_spacing <= 0.5 * lambda * (1.0 + kSpacingRelTol);
    if (config.wants(Scheme::Fpa) ||
        (check && fpa_fits &&
         (config.wants(Scheme::Proposed) || config.wants(Scheme::As) || config.wants(Scheme::Otpa)))) {
        same_realization(Scheme::Fpa);
        fpa = fpa_layout(params.num_antennas, region);
        fpa_rate = placement_rate(*fpa, *fpa, sr, rd, params, relaying, lambda);
        if (config.wants(Scheme::Fpa))
            set(Scheme::Fpa, *fpa_rate);
    }

    if (config.wants(Scheme::Proposed)) {
        same_realization(Scheme::Proposed);
        const Placement init = initial();
        const OptimizeResult r = relaying == Relaying::DF ? optimize_df(sr, rd, region, params, schedule, init, init)
                                                          : optimize_af(sr, rd, region, params, schedule, init, init);
        set(Scheme::Proposed, r.rate);
        if (check) {
            require(is_feasible(r.placement_rx, region) && is_feasible(r.placement_tx, region),
                    "proposed: placement infeasible");
            require(non_decreasing(r.trace_rx) && non_decreasing(r.trace_tx), "proposed: round trace decreased");
            if (fpa && init == *fpa)
                require(at_most(*fpa_rate, r.rate),
                        fmt::format("proposed rate {} below its FPA starting point {}", r.rate, *fpa_rate));
        }
    }

    if (config.wants(Scheme::As)) {
        same_realization(Scheme::As);
        const Placement cand = as_candidates(params.num_antennas, region);
        const SelectionResult r = antenna_selection(cand, sr, rd, params, relaying, config.as_mode, lambda);
        set(Scheme::As, r.rate);
        if (check) {
            require(is_feasible(pick(cand, r.subset_rx), region) && is_feasible(pick(cand, r.subset_tx), region),
                    "as: placement infeasible");
            if (fpa_rate)
                require(at_most(*fpa_rate, r.rate), fmt::format("as rate {} below fpa rate {}", r.rate, *fpa_rate));
        }
    }

    if (config.wants(Scheme::Otpa)) {
        same_realization(Scheme::Otpa);
        const Placement init = initial();
        const OtpaResult r = otpa_optimize(sr, rd, region, params, schedule, relaying, init);
        set(Scheme::Otpa, r.rate);
        if (check) {
            if (fpa && init == *fpa)
                require(at_most(*fpa_rate, r.rate),
                        fmt::format("otpa rate {} below its FPA starting point {}", r.rate, *fpa_rate));
            require(is_feasible(r.placement, region), "otpa: placement infeasible");
            require(non_decreasing(r.trace), "otpa: round trace decreased");
            for (const AscentTrace &t : r.ascents)
                require(non_decreasing(t.values), "otpa: ascent trace decreased");
            const OptimizeResult refined = relaying == Relaying::DF
                                               ? optimize_df(sr, rd, region, params, schedule, r.placement, r.placement)
                                               : optimize_af(sr, rd, region, params, schedule, r.placement, r.placement);
            require(at_most(r.rate, refined.rate),
                    fmt::format("two-stage refinement {} below the otpa rate {}", refined.rate, r.rate));
        }
    }

    if (config.wants(Scheme::GridExhaustive)) {
        same_realization(Scheme::GridExhaustive);
        const double step = config.grid_step * lambda;
        const GridSearchResult rx = grid_exhaustive(sr, region, step);
        const GridSearchResult tx = grid_exhaustive(rd, region, step);
        set(Scheme::GridExhaustive,
            placement_rate({rx.best_position}, {tx.best_position}, sr, rd, params, relaying, lambda));
    }

    if (config.wants(Scheme::BoundDeterministic) || check) {
        same_realization(Scheme::BoundDeterministic);
        const double bound = relaying == Relaying::DF ? rate_df_upper(sr, rd, params) : rate_af_upper(sr, rd, params);
        if (check) {
            for (Scheme s : {Scheme::Proposed, Scheme::Fpa, Scheme::As, Scheme::Otpa, Scheme::GridExhaustive}) {
                const auto r = s == Scheme::Fpa ? fpa_rate : out.rate(s);
                if (!r)
                    continue;
                require(*r >= 0.0, fmt::format("{}: negative rate {}", to_string(s), *r));
                require(at_most(*r, bound),
                        fmt::format("{}: rate {} exceeds the deterministic bound {}", to_string(s), *r, bound));
            }
        }
        if (config.wants(Scheme::BoundDeterministic))
            set(Scheme::BoundDeterministic, bound);
    }

    if (config.wants(Scheme::BoundAar)) {
        set(Scheme::BoundAar, relaying == Relaying::DF
                                  ? aar_df_upper(config.paths_rx, config.paths_tx, config.rho1sq, config.rho2sq, params).rate
                                  : aar_af_upper(config.paths_rx, config.paths_tx, config.rho1sq, config.rho2sq, params));
    }
    return out;
}

MeanStdErr aggregate(const std::vector<double> &values) {
    MeanStdErr out;
    if (values.empty())
        return out;
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
        out.mean = values.front();
        return out;
    }
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values)
        sum += v;
    out.mean = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - out.mean) * (v - out.mean);
        out.std_err = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return out;
}

std::vector<SummaryRow> summarize(const CampaignConfig &config, const std::vector<TrialResult> &trials) {
    std::vector<SummaryRow> rows;
    const std::string sweep_name(to_string(config.axis));
    for (double v : config.sweep_values) {
        for (Scheme s : config.ordered_schemes()) {
            std::vector<double> values;
            for (const TrialResult &t : trials)
                if (t.sweep_value == v && t.rate(s))
                    values.push_back(*t.rate(s));
            if (values.empty())
                continue;
            const MeanStdErr m = aggregate(values);
            rows.push_back({sweep_name, v, std::string(to_string(s)), m.mean, m.std_err,
                            static_cast<int>(values.size()), config.base_seed});
        }
    }
    return rows;
}

CampaignResult run_campaign(const CampaignConfig &config, int threads) {
    config.validate();
    if (threads <= 0)
        threads = config.threads;

    const std::size_t per_value = static_cast<std::size_t>(config.trials);
    const std::size_t total = config.sweep_values.size() * per_value;
    std::vector<TrialResult> results(total);
    std::vector<std::string> failures(total);

    const auto n = static_cast<long long>(total);
    const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (long long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double v = config.sweep_values[k / per_value];
        try {
            results[k] = run_trial(config, v, k % per_value);
        } catch (const std::exception &e) {
            failures[k] = e.what();
            if (failures[k].empty())
                failures[k] = "unknown error";
        }
    }

    CampaignResult out;
    const std::string sweep_name(to_string(config.axis));
    for (std::size_t j = 0; j < config.sweep_values.size(); ++j) {
        const double v = config.sweep_values[j];
        bool failed = false;
        for (std::size_t t = 0; t < per_value; ++t) {
            const std::size_t k = j * per_value + t;
            if (!failures[k].empty()) {
                out.errors.push_back({v, t, failures[k]});
                failed = true;
            }
        }
        if (failed) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            out.rows.push_back({sweep_name, v, "error", nan, nan, 0, config.base_seed});
            continue;
        }
        std::vector<TrialResult> block(results.begin() + static_cast<std::ptrdiff_t>(j * per_value),
                                       results.begin() + static_cast<std::ptrdiff_t>((j + 1) * per_value));
        CampaignConfig one = config;
        one.sweep_values = {v};
        for (SummaryRow &r : summarize(one, block))
            out.rows.push_back(std::move(r));
        out.trials.insert(out.trials.end(), block.begin(), block.end());
    }
    return out;
}

void write_summary_csv(std::ostream &os, const std::vector<SummaryRow> &rows) {
    os << "sweep_name,sweep_value,scheme,mean_rate_bps_hz,std_err,trials,base_seed\n";
    for (const SummaryRow &r : rows)
        fmt::print(os, "{},{:.9g},{},{:.9g},{:.9g},{},{}\n", r.sweep_name, r.sweep_value, r.scheme, r.mean_rate,
                   r.std_err, r.trials, r.base_seed);
}

void write_trials_csv(std::ostream &os, const CampaignConfig &config, const std::vector<TrialResult> &trials) {
    os << "sweep_name,sweep_value,trial_index,seed";
    for (Scheme s : kAllSchemes)
        os << ',' << to_string(s);
    os << '\n';
    for (const TrialResult &t : trials) {
        fmt::print(os, "{},{:.17g},{},{}", to_string(config.axis), t.sweep_value, t.trial_index, t.seed);
        for (const auto &r : t.rates) {
            os << ',';
            if (r)
                fmt::print(os, "{:.17g}", *r);
        }
        os << '\n';
    }
}

std::vector<TrialResult> read_trials_csv(std::istream &is) {
    std::vector<TrialResult> out;
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("trials csv: missing header");
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        if (cells.size() != 4 + kNumSchemes)
            throw std::invalid_argument(fmt::format("trials csv line {}: expected {} fields, got {}", lineno,
                                                    4 + kNumSchemes, cells.size()));
        try {
            TrialResult t;
            t.sweep_value = std::stod(cells[1]);
            t.trial_index = std::stoull(cells[2]);
            t.seed = std::stoull(cells[3]);
            for (std::size_t s = 0; s < kNumSchemes; ++s)
                if (!cells[4 + s].empty())
                    t.rates[s] = std::stod(cells[4 + s]);
            out.push_back(t);
        } catch (const std::logic_error &) {
            throw std::invalid_argument(fmt::format("trials csv line {}: malformed number", lineno));
        }
    }
    return out;
}

} // namespace marelay
