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

#include "marelay/rate.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <unsupported/Eigen/KroneckerProduct>

namespace marelay {

std::string_view to_string(Relaying r) { return r == Relaying::DF ? "df" : "af"; }

void SystemParams::validate() const {
    if (num_antennas < 1)
        throw std::invalid_argument(fmt::format("SystemParams: num_antennas must be >= 1, got {}", num_antennas));
    if (!(p_source > 0.0) || !(p_relay > 0.0) || !(noise_relay > 0.0) || !(noise_dest > 0.0))
        throw std::invalid_argument("SystemParams: powers and noise variances must be strictly positive");
}

SystemParams SystemParams::from_snr_db(int num_antennas, double snr_db, double noise) {
    SystemParams p;
    p.num_antennas = num_antennas;
    p.noise_relay = noise;
    p.noise_dest = noise;
    p.p_source = noise * std::pow(10.0, snr_db / 10.0);
    p.p_relay = p.p_source;
    p.validate();
    return p;
}

namespace {

void require_same_length(const CVector &h1, const CVector &h2, const char *what) {
    if (h1.size() != h2.size() || h1.size() == 0)
        throw DimensionError(fmt::format("{}: channel lengths {} and {} must match and be non-zero", what, h1.size(),
                                         h2.size()));
}

} // namespace

double rate_df_from_gains(double gain1, double gain2, const SystemParams &params) {
    const double snr = std::min(params.snr_relay() * gain1, params.snr_dest() * gain2);
    return 0.5 * std::log2(1.0 + snr);
}

double rate_df(const CVector &h1, const CVector &h2, const SystemParams &params) {
    require_same_length(h1, h2, "rate_df");
    return rate_df_from_gains(h1.squaredNorm(), h2.squaredNorm(), params);
}

double rate_af(const CVector &h1, const CVector &h2, const CMatrix &W, const SystemParams &params) {
    require_same_length(h1, h2, "rate_af");
    if (W.rows() != h2.size() || W.cols() != h1.size())
        throw DimensionError(fmt::format("rate_af: W is {}x{}, expected {}x{}", W.rows(), W.cols(), h2.size(), h1.size()));
    // h2^H W as a row vector.
    const Eigen::RowVectorXcd forward = h2.adjoint() * W;
    const cplx signal = forward * h1;
    const double snr = params.p_source * std::norm(signal) / (params.noise_relay * forward.squaredNorm() + params.noise_dest);
    return 0.5 * std::log2(1.0 + snr);
}

double af_optimal_snr(double gain1, double gain2, const SystemParams &params) {
    const double num = params.p_source * params.p_relay * gain1 * gain2;
    const double den = params.p_relay * params.noise_relay * gain2 + params.p_source * params.noise_dest * gain1 +
                       params.noise_relay * params.noise_dest;
    return num / den;
}

double rate_af_from_gains(double gain1, double gain2, const SystemParams &params) {
    return 0.5 * std::log2(1.0 + af_optimal_snr(gain1, gain2, params));
}

double relay_power(const CMatrix &W, const CVector &h1, const SystemParams &params) {
    return params.p_source * (W * h1).squaredNorm() + params.noise_relay * W.squaredNorm();
}

AfBeamformer af_beamformer(const CVector &h1, const CVector &h2, const SystemParams &params) {
    require_same_length(h1, h2, "af_beamformer");
    const double g1 = h1.squaredNorm();
    const double g2 = h2.squaredNorm();
    if (!(g1 > 0.0) || !(g2 > 0.0))
        throw DegenerateChannelError("af_beamformer: source-relay or relay-destination channel is zero");
    AfBeamformer bf;
    bf.scale = 1.0 / std::sqrt(g1 * g2 * (params.p_source * g1 + params.noise_relay) / params.p_relay);
    bf.matrix = bf.scale * (h2 * h1.adjoint());
    return bf;
}

AfOracleSolution af_beamformer_oracle(const CVector &h1, const CVector &h2, const SystemParams &params) {
    require_same_length(h1, h2, "af_beamformer_oracle");
    if (!(h1.squaredNorm() > 0.0) || !(h2.squaredNorm() > 0.0))
        throw DegenerateChannelError("af_beamformer_oracle: source-relay or relay-destination channel is zero");

    const Eigen::Index N = h1.size();
    const CMatrix I = CMatrix::Identity(N, N);
    const CVector h1c = h1.conjugate();

    // vec(h2^H W h1) = h^H w, vec(h2^H W) = A^H w, vec(W h1) = B^H w.
    const CVector h = Eigen::kroneckerProduct(h1c, h2);
    const CMatrix A = Eigen::kroneckerProduct(I, h2);
    const CMatrix B = Eigen::kroneckerProduct(h1c, I);

    const CMatrix X2 = params.p_source * B * B.adjoint() + params.noise_relay * CMatrix::Identity(N * N, N * N);
    const CMatrix X3 = params.noise_relay * A * A.adjoint() + (params.noise_dest / params.p_relay) * X2;

    const Eigen::PartialPivLU<CMatrix> lu(X3);
    if (!(lu.rcond() > 1e-13))
        throw NumericalError(fmt::format("af_beamformer_oracle: X3 is ill-conditioned (rcond {})", lu.rcond()));
    const CVector direction = lu.solve(h);

    // xi = sqrt(P_r) / ||X2^{1/2} X3^{-1} h||, with ||X2^{1/2} v||^2 = v^H X2 v.
    const double quad = std::real(direction.dot(X2 * direction));
    AfOracleSolution sol;
    sol.w = (std::sqrt(params.p_relay) / std::sqrt(quad)) * direction;
    sol.matrix = Eigen::Map<const CMatrix>(sol.w.data(), N, N);
    sol.rate = rate_af(h1, h2, sol.matrix, params);
    return sol;
}

double singular_value_ratio(const CMatrix &W) {
    if (W.size() == 0)
        return 0.0;
    const Eigen::JacobiSVD<CMatrix> svd(W);
    const auto &s = svd.singularValues();
    if (s.size() < 2 || s[0] == 0.0)
        return 0.0;
    return s[1] / s[0];
}

} // namespace marelay
