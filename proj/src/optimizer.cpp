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

#include "marelay/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "invariants.hpp"

namespace marelay {

void PgaSchedule::validate() const {
    if (!(eta_init > 0.0) || !(eta_min > 0.0) || !(eta_min < eta_init))
        throw std::invalid_argument(fmt::format("PgaSchedule: need 0 < eta_min ({}) < eta_init ({})", eta_min, eta_init));
    if (!(shrink > 0.0 && shrink < 1.0))
        throw std::invalid_argument(fmt::format("PgaSchedule: shrink must lie in (0, 1), got {}", shrink));
    if (max_iters < 1 || max_ao_rounds < 1)
        throw std::invalid_argument("PgaSchedule: max_iters and max_ao_rounds must be positive");
    if (!(ao_tol > 0.0))
        throw std::invalid_argument("PgaSchedule: ao_tol must be positive");
}

PgaSchedule PgaSchedule::scaled(double lambda) const {
    PgaSchedule s = *this;
    s.eta_init *= lambda;
    s.eta_min *= lambda;
    return s;
}

Vec2 gain_gradient(Vec2 position, const PathSet &paths, double wavelength) {
    const double k = 2.0 * kPi / wavelength;
    const std::size_t L = paths.num_paths();
    const auto &c = paths.coefficients();
    const auto &dx = paths.dir_x();
    const auto &dy = paths.dir_y();

    Vec2 grad{0.0, 0.0};
    for (std::size_t l1 = 0; l1 < L; ++l1) {
        const double omega1 = position.x * dx[l1] + position.y * dy[l1];
        for (std::size_t l2 = 0; l2 < L; ++l2) {
            if (l1 == l2)
                continue;
            const cplx G = c[l1] * std::conj(c[l2]);
            const double omega2 = position.x * dx[l2] + position.y * dy[l2];
            const double theta = k * (omega1 - omega2) - std::arg(G);
            const double w = std::abs(G) * std::sin(theta);
            grad.x += w * (dx[l1] - dx[l2]);
            grad.y += w * (dy[l1] - dy[l2]);
        }
    }
    return (-k) * grad;
}

Vec2 project(Vec2 position, const Region &region) {
    const double h = region.half();
    return {std::clamp(position.x, -h, h), std::clamp(position.y, -h, h)};
}

Vec2 ascend_position(std::size_t index, const Placement &placement, const Region &region,
                     const PgaSchedule &schedule, const PositionObjective &objective, AscentTrace *trace) {
    if (index >= placement.size())
        throw std::out_of_range(fmt::format("ascend_position: antenna {} of {}", index, placement.size()));
    require_feasible(placement, region, "ascend_position");

    Vec2 current = placement[index];
    double value = objective.value(current);
    if (trace)
        trace->values.assign(1, value);

    for (int iter = 0; iter < schedule.max_iters; ++iter) {
        const Vec2 grad = objective.gradient(current);

        double eta = schedule.eta_init;
        bool accepted = false;
        Vec2 candidate;
        double candidate_value = value;
        for (;;) {
            candidate = project(current + eta * grad, region);
            if (spacing_ok(candidate, placement, index, region)) {
                candidate_value = objective.value(candidate);
                if (candidate_value >= value) {
                    accepted = true;
                    break;
                }
            }
            if (eta <= schedule.eta_min)
                break;
            eta *= schedule.shrink;
        }
        if (!accepted)
            break;

        detail::check_invariant(candidate_value >= value, "ascent step decreased the objective");
        detail::check_invariant(inside_region(candidate, region) && spacing_ok(candidate, placement, index, region),
                                "ascent step left the feasible set");

        // An unchanged point (zero gradient, or pushed against the boundary)
        // would repeat the same iteration forever.
        const bool stalled = candidate == current;
        current = candidate;
        value = candidate_value;
        if (trace)
            trace->values.push_back(value);
        if (eta <= schedule.eta_min || stalled)
            break;
    }
    return current;
}

Vec2 pga_single(std::size_t index, const Placement &placement, const PathSet &paths, const Region &region,
                const PgaSchedule &schedule, AscentTrace *trace) {
    const double lambda = region.wavelength;
    PositionObjective objective{
        [&](Vec2 p) { return antenna_gain(p, paths, lambda); },
        [&](Vec2 p) { return gain_gradient(p, paths, lambda); },
    };
    return ascend_position(index, placement, region, schedule, objective, trace);
}

StageResult optimize_stage(const PathSet &paths, const Placement &init, const Region &region,
                           const PgaSchedule &schedule) {
    schedule.validate();
    require_feasible(init, region, "optimize_stage");

    StageResult out;
    out.placement = init;
    double gain = channel_gain(out.placement, paths, region.wavelength);
    out.round_trace.push_back(gain);

    for (int round = 0; round < schedule.max_ao_rounds; ++round) {
        for (std::size_t n = 0; n < out.placement.size(); ++n) {
            AscentTrace t;
            out.placement[n] = pga_single(n, out.placement, paths, region, schedule, &t);
            out.ascents.push_back(std::move(t));
        }
        const double next = channel_gain(out.placement, paths, region.wavelength);
        detail::check_invariant(next >= gain, "stage objective decreased across a round");
        out.round_trace.push_back(next);
        const double increment = next - gain;
        gain = next;
        if (increment < schedule.ao_tol)
            break;
    }
    detail::check_invariant(is_feasible(out.placement, region), "stage output is infeasible");
    out.gain = gain;
    return out;
}

namespace {

struct TwoStage {
    StageResult rx;
    StageResult tx;
};

TwoStage optimize_both(const PathSet &paths_sr, const PathSet &paths_rd, const Region &region,
                       const SystemParams &params, const PgaSchedule &schedule, const Placement &init_rx,
                       const Placement &init_tx) {
    params.validate();
    region.validate();
    const auto N = static_cast<std::size_t>(params.num_antennas);
    if (init_rx.size() != N || init_tx.size() != N)
        throw DimensionError(fmt::format("initial placements have {} and {} antennas, expected {}", init_rx.size(),
                                         init_tx.size(), N));
    return {optimize_stage(paths_sr, init_rx, region, schedule), optimize_stage(paths_rd, init_tx, region, schedule)};
}

OptimizeResult assemble(TwoStage &&stages) {
    OptimizeResult r;
    r.placement_rx = std::move(stages.rx.placement);
    r.placement_tx = std::move(stages.tx.placement);
    r.gain_rx = stages.rx.gain;
    r.gain_tx = stages.tx.gain;
    r.trace_rx = std::move(stages.rx.round_trace);
    r.trace_tx = std::move(stages.tx.round_trace);
    return r;
}

} // namespace

OptimizeResult optimize_df(const PathSet &paths_sr, const PathSet &paths_rd, const Region &region,
                           const SystemParams &params, const PgaSchedule &schedule, const Placement &init_rx,
                           const Placement &init_tx) {
    OptimizeResult r = assemble(optimize_both(paths_sr, paths_rd, region, params, schedule, init_rx, init_tx));
    r.rate = rate_df(channel_sr(r.placement_rx, paths_sr, region.wavelength),
                     channel_rd(r.placement_tx, paths_rd, region.wavelength), params);
    return r;
}

OptimizeResult optimize_af(const PathSet &paths_sr, const PathSet &paths_rd, const Region &region,
                           const SystemParams &params, const PgaSchedule &schedule, const Placement &init_rx,
                           const Placement &init_tx) {
    OptimizeResult r = assemble(optimize_both(paths_sr, paths_rd, region, params, schedule, init_rx, init_tx));
    const CVector h1 = channel_sr(r.placement_rx, paths_sr, region.wavelength);
    const CVector h2 = channel_rd(r.placement_tx, paths_rd, region.wavelength);
    r.beamformer = af_beamformer(h1, h2, params);
    r.rate = rate_af(h1, h2, r.beamformer->matrix, params);
    return r;
}

Placement lattice_layout(std::size_t count, std::size_t columns, double pitch, double x0, double y0) {
    Placement p;
    p.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto row = static_cast<double>(i / columns);
        const auto col = static_cast<double>(i % columns);
        p.push_back({x0 + col * pitch, y0 + row * pitch});
    }
    return p;
}

Placement feasible_init(int num_antennas, const Region &region, InitMode mode, std::uint64_t seed) {
    region.validate();
    if (num_antennas < 1)
        throw std::invalid_argument("feasible_init: need at least one antenna");
    const auto N = static_cast<std::size_t>(num_antennas);

    if (mode == InitMode::UniformGrid) {
        std::size_t k = 1;
        while (k * k < N)
            ++k;
        const double pitch = std::max(0.5 * region.wavelength, region.min_spacing);
        const double offset = -0.5 * static_cast<double>(k - 1) * pitch;
        Placement p = lattice_layout(N, k, pitch, offset, offset);
        require_feasible(p, region, fmt::format("feasible_init: {}x{} grid with pitch {}", k, k, pitch));
        return p;
    }

    Rng rng(seed);
    Placement p;
    const double h = region.half();
    for (std::size_t n = 0; n < N; ++n) {
        bool placed = false;
        for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
            const Vec2 q{rng.uniform(-h, h), rng.uniform(-h, h)};
            if (spacing_ok(q, p, p.size(), region)) {
                p.push_back(q);
                placed = true;
            }
        }
        if (!placed)
            throw InfeasibleError(fmt::format("feasible_init: could not place antenna {} of {} with spacing {} in a {}x{} "
                                              "region after 10000 draws",
                                              n + 1, N, region.min_spacing, region.side_length, region.side_length));
    }
    return p;
}

} // namespace marelay
