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

// Antenna-position optimization.
//
// Each antenna is moved by projected gradient ascent with a backtracking
// line search; antennas are visited in ascending index order (Gauss-Seidel)
// in rounds until the stage objective stops improving. Stage I (receive
// placement, ||h1||^2) and stage II (transmit placement, ||h2||^2) share no
// variables and are optimized independently. For AF the optimal relay
// matrix is built from the optimized channels afterwards.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "marelay/channel.hpp"
#include "marelay/rate.hpp"
#include "marelay/types.hpp"

namespace marelay {

/// Step-size and iteration control. Lengths are in meters; the defaults
/// assume lambda = 1 (use scaled() otherwise).
struct PgaSchedule {
    double eta_init = 10.0;   ///< initial backtracking step, 10 lambda
    double eta_min = 1e-4;    ///< a step accepted at or below this ends the ascent
    double shrink = 0.5;      ///< mu
    int max_iters = 300;      ///< I_max, ascent iterations per antenna visit
    double ao_tol = 1e-3;     ///< absolute per-round objective increment that stops a stage
    int max_ao_rounds = 100;  ///< safety cap on rounds per stage

    void validate() const;
    /// Copy with eta_init / eta_min expressed for wavelength `lambda`.
    PgaSchedule scaled(double lambda) const;
};

/// Objective of a single antenna's position with the others held fixed.
struct PositionObjective {
    std::function<double(Vec2)> value;
    std::function<Vec2(Vec2)> gradient;
};

/// Per-visit record of an ascent: objective after each accepted iteration
/// (entry 0 is the starting value).
struct AscentTrace {
    std::vector<double> values;
};

/// Closed-form gradient of |frv(p)^H c|^2 with respect to p.
Vec2 gain_gradient(Vec2 position, const PathSet &paths, double wavelength = 1.0);

/// Clamp each coordinate to [-A/2, A/2].
Vec2 project(Vec2 position, const Region &region);

/// Projected gradient ascent of `objective` for antenna `index` with every
/// other antenna fixed. A candidate project(p + eta grad) is accepted once it
/// does not decrease the objective and keeps distance >= D to the others;
/// eta starts at eta_init for every iteration and is multiplied by `shrink`
/// on rejection. The ascent stops after max_iters iterations, when the
/// accepted step is <= eta_min, or when no step above eta_min is accepted.
/// The placement must be feasible; the result always is.
Vec2 ascend_position(std::size_t index, const Placement &placement, const Region &region,
                     const PgaSchedule &schedule, const PositionObjective &objective, AscentTrace *trace = nullptr);

/// Ascent of the single-antenna channel gain |h_n(p)|^2.
Vec2 pga_single(std::size_t index, const Placement &placement, const PathSet &paths, const Region &region,
                const PgaSchedule &schedule, AscentTrace *trace = nullptr);

struct StageResult {
    Placement placement;
    double gain = 0.0;
    /// Stage objective before the first round and after every round.
    std::vector<double> round_trace;
    /// All inner ascent traces, in visit order.
    std::vector<AscentTrace> ascents;
};

/// Rounds of pga_single over n = 0..N-1 until the increment of ||h||^2
/// between rounds drops below ao_tol.
StageResult optimize_stage(const PathSet &paths, const Placement &init, const Region &region,
                           const PgaSchedule &schedule);

struct OptimizeResult {
    Placement placement_rx;
    Placement placement_tx;
    double gain_rx = 0.0;
    double gain_tx = 0.0;
    std::vector<double> trace_rx;
    std::vector<double> trace_tx;
    double rate = 0.0;
    std::optional<AfBeamformer> beamformer; ///< AF only
};

/// Two-stage placement optimization and the DF rate.
OptimizeResult optimize_df(const PathSet &paths_sr, const PathSet &paths_rd, const Region &region,
                           const SystemParams &params, const PgaSchedule &schedule, const Placement &init_rx,
                           const Placement &init_tx);

/// Same placements as optimize_df, then the optimal AF matrix and the AF rate.
OptimizeResult optimize_af(const PathSet &paths_sr, const PathSet &paths_rd, const Region &region,
                           const SystemParams &params, const PgaSchedule &schedule, const Placement &init_rx,
                           const Placement &init_tx);

enum class InitMode { UniformGrid, Random };

/// A feasible starting placement. UniformGrid: the ceil(sqrt N) x ceil(sqrt N)
/// lattice with pitch max(lambda/2, D) centred on the origin, filled row by
/// row (rows ascend in y, columns in x) and truncated to N. Random: uniform
/// rejection sampling, at most 10^4 draws per antenna.
Placement feasible_init(int num_antennas, const Region &region, InitMode mode, std::uint64_t seed = 0);

/// Row-major lattice helper shared by the FPA and AS layouts.
Placement lattice_layout(std::size_t count, std::size_t columns, double pitch, double x0, double y0);

} // namespace marelay
