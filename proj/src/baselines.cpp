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

#include "marelay/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "invariants.hpp"

namespace marelay {

double placement_rate(const Placement &rx, const Placement &tx, const PathSet &paths_sr, const PathSet &paths_rd,
                      const SystemParams &params, Relaying relaying, double wavelength) {
    const CVector h1 = channel_sr(rx, paths_sr, wavelength);
    const CVector h2 = channel_rd(tx, paths_rd, wavelength);
    if (relaying == Relaying::DF)
        return rate_df(h1, h2, params);
    const AfBeamformer bf = af_beamformer(h1, h2, params);
    return rate_af(h1, h2, bf.matrix, params);
}

namespace {

std::size_t array_columns(int num_antennas) {
    std::size_t k = 1;
    while (k * k < static_cast<std::size_t>(num_antennas))
        ++k;
    return k;
}

Placement half_wave_lattice(int num_antennas, std::size_t count, const Region &region, const char *what) {
    region.validate();
    if (num_antennas < 1)
        throw std::invalid_argument(fmt::format("{}: need at least one antenna", what));
    const double pitch = 0.5 * region.wavelength;
    if (region.min_spacing > pitch * (1.0 + kSpacingRelTol))
        throw InfeasibleError(fmt::format("{}: half-wavelength pitch {} is below the minimum spacing {}", what, pitch,
                                          region.min_spacing));
    const std::size_t k = array_columns(num_antennas);
    const double offset = -0.5 * static_cast<double>(k - 1) * pitch;
    Placement p = lattice_layout(count, k, pitch, offset, offset);
    require_feasible(p, region, what);
    return p;
}

bool next_combination(std::vector<std::size_t> &idx, std::size_t universe) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < universe - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

double subset_sum(const std::vector<double> &v, const std::vector<std::size_t> &idx) {
    double s = 0.0;
    for (std::size_t i : idx)
        s += v[i];
    return s;
}

Placement pick(const Placement &candidates, const std::vector<std::size_t> &idx) {
    Placement p;
    p.reserve(idx.size());
    for (std::size_t i : idx)
        p.push_back(candidates[i]);
    return p;
}

} // namespace

Placement fpa_layout(int num_antennas, const Region &region) {
    return half_wave_lattice(num_antennas, static_cast<std::size_t>(num_antennas), region, "fpa_layout");
}

Placement as_candidates(int num_antennas, const Region &region) {
    return half_wave_lattice(num_antennas, 2 * static_cast<std::size_t>(num_antennas), region, "as_candidates");
}

SelectionResult antenna_selection(const Placement &candidates, const PathSet &paths_sr, const PathSet &paths_rd,
                                  const SystemParams &params, Relaying relaying, SubsetMode mode, double wavelength) {
    params.validate();
    const int N = params.num_antennas;
    if (N > kMaxSelectionAntennas)
        throw std::invalid_argument(
            fmt::format("antenna_selection: N = {} exceeds the exhaustive-search limit of {}", N, kMaxSelectionAntennas));
    const auto n = static_cast<std::size_t>(N);
    if (candidates.size() != 2 * n)
        throw DimensionError(fmt::format("antenna_selection: expected {} candidates, got {}", 2 * n, candidates.size()));

    std::vector<double> g1(candidates.size()), g2(candidates.size());
    for (std::size_t m = 0; m < candidates.size(); ++m) {
        g1[m] = antenna_gain(candidates[m], paths_sr, wavelength);
        g2[m] = antenna_gain(candidates[m], paths_rd, wavelength);
    }

    const auto end_to_end = [&](double s1, double s2) {
        return relaying == Relaying::DF ? std::min(params.snr_relay() * s1, params.snr_dest() * s2)
                                        : af_optimal_snr(s1, s2, params);
    };

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    SelectionResult out;
    out.subset_rx = out.subset_tx = idx;
    double best1 = subset_sum(g1, idx), best2 = subset_sum(g2, idx);
    double best_joint = end_to_end(best1, best2);

    while (next_combination(idx, candidates.size())) {
        const double s1 = subset_sum(g1, idx);
        const double s2 = subset_sum(g2, idx);
        if (mode == SubsetMode::Independent) {
            if (strictly_better(s1, best1)) {
                best1 = s1;
                out.subset_rx = idx;
            }
            if (strictly_better(s2, best2)) {
                best2 = s2;
                out.subset_tx = idx;
            }
        } else {
            const double joint = end_to_end(s1, s2);
            if (strictly_better(joint, best_joint)) {
                best_joint = joint;
                out.subset_rx = out.subset_tx = idx;
            }
        }
    }

    out.rate = placement_rate(pick(candidates, out.subset_rx), pick(candidates, out.subset_tx), paths_sr, paths_rd,
                              params, relaying, wavelength);
    return out;
}

OtpaResult otpa_optimize(const PathSet &paths_sr, const PathSet &paths_rd, const Region &region,
                         const SystemParams &params, const PgaSchedule &schedule, Relaying relaying,
                         const Placement &init) {
    schedule.validate();
    params.validate();
    region.validate();
    require_feasible(init, region, "otpa_optimize");
    if (init.size() != static_cast<std::size_t>(params.num_antennas))
        throw DimensionError(fmt::format("otpa_optimize: initial placement has {} antennas, expected {}", init.size(),
                                         params.num_antennas));

    const double lambda = region.wavelength;
    const double a = params.snr_relay();
    const double b = params.snr_dest();
    const double ps_pr = params.p_source * params.p_relay;
    const double cr = params.p_relay * params.noise_relay;
    const double cd = params.p_source * params.noise_dest;
    const double c0 = params.noise_relay * params.noise_dest;

    OtpaResult out;
    out.placement = init;
    const std::size_t N = init.size();
    std::vector<double> g1(N), g2(N);
    for (std::size_t m = 0; m < N; ++m) {
        g1[m] = antenna_gain(init[m], paths_sr, lambda);
        g2[m] = antenna_gain(init[m], paths_rd, lambda);
    }

    const auto snr = [&](double s1, double s2) {
        return relaying == Relaying::DF ? std::min(a * s1, b * s2) : af_optimal_snr(s1, s2, params);
    };
    // Stage gains with antenna n moved to p, summed in index order so the
    // per-antenna objective and the round objective are the same floating-point function.
    const auto totals = [&](std::size_t n, double p1, double p2) {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t m = 0; m < N; ++m) {
            s1 += m == n ? p1 : g1[m];
            s2 += m == n ? p2 : g2[m];
        }
        return std::pair{s1, s2};
    };

    double current = snr(totals(N, 0.0, 0.0).first, totals(N, 0.0, 0.0).second);
    out.trace.push_back(current);

    for (int round = 0; round < schedule.max_ao_rounds; ++round) {
        for (std::size_t n = 0; n < N; ++n) {
            PositionObjective objective{
                [&](Vec2 p) {
                    const auto [s1, s2] = totals(n, antenna_gain(p, paths_sr, lambda), antenna_gain(p, paths_rd, lambda));
                    return snr(s1, s2);
                },
                [&](Vec2 p) {
                    const auto [s1, s2] = totals(n, antenna_gain(p, paths_sr, lambda), antenna_gain(p, paths_rd, lambda));
                    if (relaying == Relaying::DF) {
                        return a * s1 <= b * s2 ? a * gain_gradient(p, paths_sr, lambda)
                                                : b * gain_gradient(p, paths_rd, lambda);
                    }
                    const double den = cr * s2 + cd * s1 + c0;
                    const double d1 = ps_pr * s2 * (cr * s2 + c0) / (den * den);
                    const double d2 = ps_pr * s1 * (cd * s1 + c0) / (den * den);
                    return d1 * gain_gradient(p, paths_sr, lambda) + d2 * gain_gradient(p, paths_rd, lambda);
                },
            };
            AscentTrace t;
            out.placement[n] = ascend_position(n, out.placement, region, schedule, objective, &t);
            out.ascents.push_back(std::move(t));
            g1[n] = antenna_gain(out.placement[n], paths_sr, lambda);
            g2[n] = antenna_gain(out.placement[n], paths_rd, lambda);
        }
        const auto [s1, s2] = totals(N, 0.0, 0.0);
        const double next = snr(s1, s2);
        detail::check_invariant(next >= current, "OTPA objective decreased across a round");
        out.trace.push_back(next);
        const double increment = next - current;
        current = next;
        if (increment < schedule.ao_tol)
            break;
    }
    detail::check_invariant(is_feasible(out.placement, region), "OTPA output is infeasible");
    out.rate = placement_rate(out.placement, out.placement, paths_sr, paths_rd, params, relaying, lambda);
    return out;
}

void GainGrid::write_csv(std::ostream &os) const {
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c)
                os << ',';
            fmt::print(os, "{:.9g}", at(r, c));
        }
        os << '\n';
    }
}

GridSearchResult grid_exhaustive(const PathSet &paths, const Region &region, double step) {
    const GridSpec cells = grid_over_region(region, step);
    GridSearchResult out;
    out.grid.step = cells.step;
    out.grid.origin = cells.origin;
    out.grid.rows = cells.rows;
    out.grid.cols = cells.cols;
    out.grid.values = grid_gains_parallel(paths, cells, region.wavelength);
    const std::size_t best = argmax_first(out.grid.values);
    out.best_gain = out.grid.values[best];
    out.best_position = cells.center(best / cells.cols, best % cells.cols);
    return out;
}

} // namespace marelay
