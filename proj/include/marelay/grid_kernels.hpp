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

// Single-antenna gain evaluated on a rectangular lattice of positions.
//
// grid_gains_serial is the reference: one antenna_gain() call per cell.
// grid_gains_parallel factors exp(-j k (x a_l + y b_l)) into a per-column and
// a per-row phasor table, so each cell costs L complex multiply-adds, and
// splits rows across OpenMP threads. Every cell is computed by the same
// arithmetic whatever the thread count, so the output is bit-identical for
// any number of threads.

#include <cstddef>
#include <span>
#include <vector>

#include "marelay/channel.hpp"

namespace marelay {

struct GridSpec {
    Vec2 origin;             ///< centre of cell (row 0, column 0)
    double step = 0.01;      ///< cell pitch, meters
    std::size_t rows = 0;    ///< along y
    std::size_t cols = 0;    ///< along x
    double half_extent = 0;  ///< cell centres are clamped to [-half_extent, half_extent]

    /// Centre of cell (row, col).
    Vec2 center(std::size_t row, std::size_t col) const;
};

/// ceil(A / step) cells per axis covering the square region, first centre at
/// (-A/2 + step/2, -A/2 + step/2).
GridSpec grid_over_region(const Region &region, double step);

/// Row-major gains, reference implementation.
std::vector<double> grid_gains_serial(const PathSet &paths, const GridSpec &grid, double wavelength = 1.0);

/// Row-major gains, separable phasors + OpenMP over rows.
std::vector<double> grid_gains_parallel(const PathSet &paths, const GridSpec &grid, double wavelength = 1.0);

/// Relative margin below which two gains count as tied.
inline constexpr double kTieRelTol = 1e-12;

/// True when `candidate` beats `best` by more than the tie margin.
inline bool strictly_better(double candidate, double best) {
    return candidate > best + kTieRelTol * std::abs(best);
}

/// Index of the largest value; ties (within kTieRelTol) go to the lowest index.
std::size_t argmax_first(std::span<const double> values);

} // namespace marelay
