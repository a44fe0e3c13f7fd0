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

// Field-response channel model for one side of the relay.
//
// A PathSet holds L far-field paths with elevation theta_l, azimuth phi_l and
// complex response c_l. An antenna at p = (x, y) sees path l with phase
// (2 pi / lambda) * (x sin(theta_l) cos(phi_l) + y cos(theta_l)) relative to
// the origin, and its channel coefficient is h(p) = sum_l conj(e^{j phase_l}) c_l.
// The same model serves the receive side (source -> relay) and the transmit
// side (relay -> destination).

#include <cstdint>
#include <span>
#include <vector>

#include "marelay/rng.hpp"
#include "marelay/types.hpp"

namespace marelay {

class PathSet {
  public:
    PathSet(std::vector<double> elevations, std::vector<double> azimuths, std::vector<cplx> coefficients,
            double avg_power);

    std::size_t num_paths() const { return coefficients_.size(); }
    const std::vector<double> &elevations() const { return elevations_; }
    const std::vector<double> &azimuths() const { return azimuths_; }
    const std::vector<cplx> &coefficients() const { return coefficients_; }
    double avg_power() const { return avg_power_; }

    /// sin(theta_l) cos(phi_l): phase slope along x per unit (2 pi / lambda).
    const std::vector<double> &dir_x() const { return dir_x_; }
    /// cos(theta_l): phase slope along y per unit (2 pi / lambda).
    const std::vector<double> &dir_y() const { return dir_y_; }

    /// sum_l |c_l|, whose square bounds the single-antenna gain.
    double coefficient_l1() const;

    friend bool operator==(const PathSet &, const PathSet &) = default;

  private:
    std::vector<double> elevations_;
    std::vector<double> azimuths_;
    std::vector<cplx> coefficients_;
    double avg_power_;
    std::vector<double> dir_x_;
    std::vector<double> dir_y_;
};

/// Field-response vector at `position`: entry l is exp(j 2pi/lambda omega_l(position)).
CVector field_response(Vec2 position, const PathSet &paths, double wavelength = 1.0);

/// Receive FRV (source -> relay side).
inline CVector receive_frv(Vec2 position, const PathSet &paths, double wavelength = 1.0) {
    return field_response(position, paths, wavelength);
}

/// Transmit FRV (relay -> destination side).
inline CVector transmit_frv(Vec2 position, const PathSet &paths, double wavelength = 1.0) {
    return field_response(position, paths, wavelength);
}

/// Channel coefficient of a single antenna, frv(position)^H c.
cplx antenna_channel(Vec2 position, const PathSet &paths, double wavelength = 1.0);

/// |antenna_channel|^2.
double antenna_gain(Vec2 position, const PathSet &paths, double wavelength = 1.0);

/// Channel vector for a placement: entry n is frv(p_n)^H c.
CVector channel_vector(const Placement &placement, const PathSet &paths, double wavelength = 1.0);

/// Source -> relay channel h1 for the stage-I placement.
inline CVector channel_sr(const Placement &placement, const PathSet &paths, double wavelength = 1.0) {
    return channel_vector(placement, paths, wavelength);
}

/// Relay -> destination channel h2 for the stage-II placement.
inline CVector channel_rd(const Placement &placement, const PathSet &paths, double wavelength = 1.0) {
    return channel_vector(placement, paths, wavelength);
}

/// ||channel_vector||^2, summed antenna by antenna.
double channel_gain(const Placement &placement, const PathSet &paths, double wavelength = 1.0);

/// Random path set: angles i.i.d. uniform on [-pi/2, pi/2], coefficients
/// i.i.d. CN(0, avg_power / L).
PathSet sample_paths(std::size_t num_paths, double avg_power, Rng &rng);
PathSet sample_paths(std::size_t num_paths, double avg_power, std::uint64_t seed);

} // namespace marelay
