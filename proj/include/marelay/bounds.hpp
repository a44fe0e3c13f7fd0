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

// Closed-form rate upper bounds.
//
// Deterministic bounds assume every antenna reaches the phase-aligned gain
// (sum_l |c_l|)^2. Average bounds replace the per-realization gains by
// moments of sums of Rayleigh variables: a Nakagami-type approximation of
// the sum for DF, and the exact second moment for AF.

#include <cstddef>

#include "marelay/channel.hpp"
#include "marelay/rate.hpp"

namespace marelay {

/// N (sum_l |c_l|)^2, the largest ||h||^2 any N-antenna placement can reach.
double gain_upper_bound(const PathSet &paths, int num_antennas);

/// 1/2 log2(1 + N min{P_s G1 / sigma_r^2, P_r G2 / sigma_d^2}), G = (sum |c|)^2.
double rate_df_upper(const PathSet &g1, const PathSet &f2, const SystemParams &params);

/// AF counterpart: af_optimal_snr evaluated at N G1, N G2.
double rate_af_upper(const PathSet &g1, const PathSet &f2, const SystemParams &params);

struct AarParams {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
};

/// alpha_i = rho_i^2 P [(2L-1)!!]^{1/L} / (2 L sigma^2) and
/// V_i = rho_i^2 [1 + (L - 1) pi / 4] for both hops.
AarParams aar_params(std::size_t paths_rx, std::size_t paths_tx, double rho1sq, double rho2sq,
                     const SystemParams &params);

struct DfAarBound {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double i1 = 0.0; ///< E[Z^2] contribution where the relay->destination hop is the minimum
    double i2 = 0.0; ///< ... where the source->relay hop is the minimum
    double rate = 0.0;
};

/// Average-rate upper bound for DF: 1/2 log2(1 + N I1 + N I2).
DfAarBound aar_df_upper(std::size_t paths_rx, std::size_t paths_tx, double rho1sq, double rho2sq,
                        const SystemParams &params);

/// Average-rate upper bound for AF built from V1, V2.
double aar_af_upper(std::size_t paths_rx, std::size_t paths_tx, double rho1sq, double rho2sq,
                    const SystemParams &params);

/// Approximate CDF of a sum of L i.i.d. Rayleigh variables with parameter alpha:
/// 1 - exp(-z^2 / 2a) sum_{k<L} (z^2 / 2a)^k / k!. Throws std::domain_error for z < 0.
double rayleigh_sum_cdf(double zeta, std::size_t num_terms, double alpha);

/// Matching density z^{2L-1} exp(-z^2 / 2a) / (2^{L-1} a^L (L-1)!).
double rayleigh_sum_pdf(double zeta, std::size_t num_terms, double alpha);

/// log((2L - 1)!!) through log-gamma.
double log_double_factorial_odd(std::size_t L);

} // namespace marelay
