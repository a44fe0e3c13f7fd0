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

#include "marelay/channel.hpp"

#include <fmt/format.h>

namespace marelay {

PathSet::PathSet(std::vector<double> elevations, std::vector<double> azimuths, std::vector<cplx> coefficients,
                 double avg_power)
    : elevations_(std::move(elevations)), azimuths_(std::move(azimuths)), coefficients_(std::move(coefficients)),
      avg_power_(avg_power) {
    const std::size_t L = coefficients_.size();
    if (L == 0)
        throw std::invalid_argument("PathSet: at least one path is required");
    if (elevations_.size() != L || azimuths_.size() != L)
        throw std::invalid_argument(fmt::format("PathSet: {} elevations, {} azimuths and {} coefficients differ in length",
                                                elevations_.size(), azimuths_.size(), L));
    if (!(avg_power_ > 0.0))
        throw std::invalid_argument("PathSet: avg_power must be positive");

    const double lim = 0.5 * kPi;
    dir_x_.resize(L);
    dir_y_.resize(L);
    for (std::size_t l = 0; l < L; ++l) {
        if (!(std::abs(elevations_[l]) <= lim) || !(std::abs(azimuths_[l]) <= lim))
            throw std::invalid_argument(fmt::format("PathSet: path {} has an angle outside [-pi/2, pi/2]", l));
        dir_x_[l] = std::sin(elevations_[l]) * std::cos(azimuths_[l]);
        dir_y_[l] = std::cos(elevations_[l]);
    }
}

double PathSet::coefficient_l1() const {
    double s = 0.0;
    for (const cplx &c : coefficients_)
        s += std::abs(c);
    return s;
}

CVector field_response(Vec2 position, const PathSet &paths, double wavelength) {
    const double k = 2.0 * kPi / wavelength;
    const std::size_t L = paths.num_paths();
    CVector f(static_cast<Eigen::Index>(L));
    for (std::size_t l = 0; l < L; ++l) {
        const double phase = k * (position.x * paths.dir_x()[l] + position.y * paths.dir_y()[l]);
        f[static_cast<Eigen::Index>(l)] = std::polar(1.0, phase);
    }
    return f;
}

cplx antenna_channel(Vec2 position, const PathSet &paths, double wavelength) {
    const double k = 2.0 * kPi / wavelength;
    cplx h{0.0, 0.0};
    for (std::size_t l = 0; l < paths.num_paths(); ++l) {
        const double phase = k * (position.x * paths.dir_x()[l] + position.y * paths.dir_y()[l]);
        h += std::polar(1.0, -phase) * paths.coefficients()[l];
    }
    return h;
}

double antenna_gain(Vec2 position, const PathSet &paths, double wavelength) {
    return std::norm(antenna_channel(position, paths, wavelength));
}

CVector channel_vector(const Placement &placement, const PathSet &paths, double wavelength) {
    CVector h(static_cast<Eigen::Index>(placement.size()));
    for (std::size_t n = 0; n < placement.size(); ++n)
        h[static_cast<Eigen::Index>(n)] = antenna_channel(placement[n], paths, wavelength);
    return h;
}

double channel_gain(const Placement &placement, const PathSet &paths, double wavelength) {
    double g = 0.0;
    for (const Vec2 &p : placement)
        g += antenna_gain(p, paths, wavelength);
    return g;
}

PathSet sample_paths(std::size_t num_paths, double avg_power, Rng &rng) {
    if (num_paths == 0)
        throw std::invalid_argument("sample_paths: the number of paths must be at least 1");
    if (!(avg_power > 0.0))
        throw std::invalid_argument(fmt::format("sample_paths: average power must be positive, got {}", avg_power));

    std::vector<double> elevations(num_paths), azimuths(num_paths);
    std::vector<cplx> coefficients(num_paths);
    const double variance = avg_power / static_cast<double>(num_paths);
    // Draw order is part of the reproducibility contract: all elevations,
    // then all azimuths, then all coefficients.
    for (auto &v : elevations)
        v = rng.uniform(-0.5 * kPi, 0.5 * kPi);
    for (auto &v : azimuths)
        v = rng.uniform(-0.5 * kPi, 0.5 * kPi);
    for (auto &c : coefficients)
        c = rng.complex_normal(variance);
    return PathSet(std::move(elevations), std::move(azimuths), std::move(coefficients), avg_power);
}

PathSet sample_paths(std::size_t num_paths, double avg_power, std::uint64_t seed) {
    Rng rng(seed);
    return sample_paths(num_paths, avg_power, rng);
}

} // namespace marelay
