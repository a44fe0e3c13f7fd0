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

// Reference schemes the movable-antenna relay is compared against:
//   FPA   fixed half-wavelength planar array of N antennas
//   AS    best N of 2N fixed antennas, exhaustive subset search
//   OTPA  one movable placement shared by both relay stages
//   grid  exhaustive single-antenna search on a fine lattice

#include <iosfwd>
#include <vector>

#include "marelay/channel.hpp"
#include "marelay/grid_kernels.hpp"
#include "marelay/optimizer.hpp"
#include "marelay/rate.hpp"

namespace marelay {

/// Rate of the relay with the given stage-I and stage-II placements; AF uses
/// the optimal beamformer for those channels.
double placement_rate(const Placement &rx, const Placement &tx, const PathSet &paths_sr, const PathSet &paths_rd,
                      const SystemParams &params, Relaying relaying, double wavelength = 1.0);

/// ceil(sqrt N) x ceil(sqrt N) lambda/2 array centred on the origin, row-major
/// (rows ascend in y), truncated to N. Throws InfeasibleError when it does not
/// fit the region or D > lambda/2.
Placement fpa_layout(int num_antennas, const Region &region);

/// 2N lambda/2-spaced candidates: the FPA layout followed by the next N
/// points of the same row-major lattice (same column count, further rows).
Placement as_candidates(int num_antennas, const Region &region);

enum class SubsetMode {
    Independent, ///< best subset per stage
    Shared,      ///< one subset for both stages
};

struct SelectionResult {
    std::vector<std::size_t> subset_rx; ///< 0-based candidate indices, ascending
    std::vector<std::size_t> subset_tx;
    double rate = 0.0;
};

/// Largest N supported by the exhaustive subset search.
inline constexpr int kMaxSelectionAntennas = 12;

/// Exhaustive search over all C(2N, N) subsets of `candidates`. Independent
/// mode maximizes each stage's gain separately; shared mode maximizes the
/// end-to-end rate with one subset. Ties go to the lexicographically
/// smallest index set.
SelectionResult antenna_selection(const Placement &candidates, const PathSet &paths_sr, const PathSet &paths_rd,
                                  const SystemParams &params, Relaying relaying,
                                  SubsetMode mode = SubsetMode::Independent, double wavelength = 1.0);

struct OtpaResult {
    Placement placement;
    double rate = 0.0;
    /// End-to-end SNR before the first round and after each round.
    std::vector<double> trace;
    std::vector<AscentTrace> ascents;
};

/// One placement serving both stages, optimized with the same per-antenna
/// projected ascent and round structure as the two-stage method. DF ascends
/// min{P_s G1 / sigma_r^2, P_r G2 / sigma_d^2} along the gradient of the
/// currently smaller branch; AF ascends af_optimal_snr(G1, G2) by the chain
/// rule.
OtpaResult otpa_optimize(const PathSet &paths_sr, const PathSet &paths_rd, const Region &region,
                         const SystemParams &params, const PgaSchedule &schedule, Relaying relaying,
                         const Placement &init);

/// Row-major table of single-antenna gains over the region.
struct GainGrid {
    double step = 0.0;
    Vec2 origin;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t row, std::size_t col) const { return values[row * cols + col]; }

    /// One line per grid row (ascending y), gains separated by commas, 9 significant digits.
    void write_csv(std::ostream &os) const;
};

struct GridSearchResult {
    Vec2 best_position;
    double best_gain = 0.0;
    GainGrid grid;
};

/// Evaluate the single-antenna gain at every cell centre and return the best
/// cell (ties to the lowest row-major index) together with the full grid.
GridSearchResult grid_exhaustive(const PathSet &paths, const Region &region, double step);

} // namespace marelay
