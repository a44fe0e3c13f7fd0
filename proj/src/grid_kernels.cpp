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

#include "marelay/grid_kernels.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace marelay {

Vec2 GridSpec::center(std::size_t row, std::size_t col) const {
    const double x = origin.x + static_cast<double>(col) * step;
    const double y = origin.y + static_cast<double>(row) * step;
    return {std::min(x, half_extent), std::min(y, half_extent)};
}

GridSpec grid_over_region(const Region &region, double step) {
    if (!(step > 0.0))
        throw std::invalid_argument(fmt::format("grid step must be positive, got {}", step));
    region.validate();
    // The relative nudge keeps exact ratios such as 2 / 0.01 from rounding up.
    const auto n = static_cast<std::size_t>(std::ceil(region.side_length / step * (1.0 - 1e-12)));
    GridSpec g;
    g.step = step;
    g.rows = g.cols = std::max<std::size_t>(n, 1);
    g.origin = {-region.half() + 0.5 * step, -region.half() + 0.5 * step};
    g.half_extent = region.half();
    return g;
}

std::vector<double> grid_gains_serial(const PathSet &paths, const GridSpec &grid, double wavelength) {
    std::vector<double> out(grid.rows * grid.cols);
    for (std::size_t r = 0; r < grid.rows; ++r)
        for (std::size_t c = 0; c < grid.cols; ++c)
            out[r * grid.cols + c] = antenna_gain(grid.center(r, c), paths, wavelength);
    return out;
}

std::vector<double> grid_gains_parallel(const PathSet &paths, const GridSpec &grid, double wavelength) {
    const double k = 2.0 * kPi / wavelength;
    const std::size_t L = paths.num_paths();
    const auto &coef = paths.coefficients();

    // col_phasor[c * L + l] = exp(-j k x_c a_l) c_l, row_phasor[r * L + l] = exp(-j k y_r b_l)
    std::vector<cplx> col_phasor(grid.cols * L);
    std::vector<cplx> row_phasor(grid.rows * L);
    for (std::size_t c = 0; c < grid.cols; ++c) {
        const double x = grid.center(0, c).x;
        for (std::size_t l = 0; l < L; ++l)
            col_phasor[c * L + l] = std::polar(1.0, -k * x * paths.dir_x()[l]) * coef[l];
    }
    for (std::size_t r = 0; r < grid.rows; ++r) {
        const double y = grid.center(r, 0).y;
        for (std::size_t l = 0; l < L; ++l)
            row_phasor[r * L + l] = std::polar(1.0, -k * y * paths.dir_y()[l]);
    }

    std::vector<double> out(grid.rows * grid.cols);
    const auto rows = static_cast<long long>(grid.rows);
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < rows; ++r) {
        const cplx *rp = &row_phasor[static_cast<std::size_t>(r) * L];
        double *dst = &out[static_cast<std::size_t>(r) * grid.cols];
        for (std::size_t c = 0; c < grid.cols; ++c) {
            const cplx *cp = &col_phasor[c * L];
            double re = 0.0, im = 0.0;
            for (std::size_t l = 0; l < L; ++l) {
                re += rp[l].real() * cp[l].real() - rp[l].imag() * cp[l].imag();
                im += rp[l].real() * cp[l].imag() + rp[l].imag() * cp[l].real();
            }
            dst[c] = re * re + im * im;
        }
    }
    return out;
}

std::size_t argmax_first(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("argmax_first: empty input");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (strictly_better(values[i], values[best]))
            best = i;
    return best;
}

} // namespace marelay
