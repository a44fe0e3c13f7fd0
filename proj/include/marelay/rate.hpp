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

// End-to-end rates of the half-duplex relay link (bits/s/Hz) and the AF
// relay beamformer.

#include <string_view>

#include "marelay/types.hpp"

namespace marelay {

enum class Relaying { DF, AF };

std::string_view to_string(Relaying r);

/// Powers and noise variances, all linear scale.
struct SystemParams {
    int num_antennas = 1;      ///< N
    double p_source = 10.0;    ///< P_s
    double p_relay = 10.0;     ///< P_r
    double noise_relay = 1.0;  ///< sigma_r^2
    double noise_dest = 1.0;   ///< sigma_d^2

    void validate() const;

    /// P_s = P_r = noise * 10^(snr_db / 10), sigma_r^2 = sigma_d^2 = noise.
    static SystemParams from_snr_db(int num_antennas, double snr_db, double noise = 1.0);

    double snr_relay() const { return p_source / noise_relay; } ///< P_s / sigma_r^2
    double snr_dest() const { return p_relay / noise_dest; }    ///< P_r / sigma_d^2
};

/// DF rate 1/2 log2(1 + min{P_s ||h1||^2 / sigma_r^2, P_r ||h2||^2 / sigma_d^2}).
double rate_df(const CVector &h1, const CVector &h2, const SystemParams &params);

/// Same, from the two channel gains directly.
double rate_df_from_gains(double gain1, double gain2, const SystemParams &params);

/// AF rate for relay matrix W:
/// 1/2 log2(1 + P_s |h2^H W h1|^2 / (sigma_r^2 ||h2^H W||^2 + sigma_d^2)).
double rate_af(const CVector &h1, const CVector &h2, const CMatrix &W, const SystemParams &params);

/// End-to-end AF SNR with the optimal rank-one beamformer, as a function of
/// the two channel gains:
///   P_s P_r G1 G2 / (P_r sigma_r^2 G2 + P_s sigma_d^2 G1 + sigma_r^2 sigma_d^2).
/// Increasing in both gains.
double af_optimal_snr(double gain1, double gain2, const SystemParams &params);

/// 1/2 log2(1 + af_optimal_snr).
double rate_af_from_gains(double gain1, double gain2, const SystemParams &params);

/// Relay transmit power P_s ||W h1||^2 + sigma_r^2 ||W||_F^2.
double relay_power(const CMatrix &W, const CVector &h1, const SystemParams &params);

struct AfBeamformer {
    CMatrix matrix; ///< W = scale * h2 h1^H
    double scale = 0.0;
};

/// Optimal AF relay matrix W = beta h2 h1^H with beta chosen so the relay
/// power constraint is met with equality. Throws DegenerateChannelError if
/// either channel is zero.
AfBeamformer af_beamformer(const CVector &h1, const CVector &h2, const SystemParams &params);

struct AfOracleSolution {
    CVector w;      ///< vec(W), column-major, length N^2
    CMatrix matrix; ///< W
    double rate = 0.0;
};

/// Independent route to the optimal AF beamformer: vectorize W, solve the
/// generalized Rayleigh quotient max w^H X1 w / w^H X3 w under w^H X2 w = P_r
/// with a dense N^2 x N^2 solve w = xi X3^{-1} h, h = conj(h1) kron h2.
AfOracleSolution af_beamformer_oracle(const CVector &h1, const CVector &h2, const SystemParams &params);

/// sigma_2 / sigma_1 of a matrix (0 for the zero matrix).
double singular_value_ratio(const CMatrix &W);

} // namespace marelay
