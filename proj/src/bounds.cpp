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

#include "marelay/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace marelay {

namespace {

void require_paths(std::size_t L, const char *what) {
    if (L == 0)
        throw std::invalid_argument(fmt::format("{}: number of paths must be at least 1", what));
}

double log_factorial(double n) { return std::lgamma(n + 1.0); }

// Small-argument fit of a sum of L Rayleigh(b) variables, b = rho^2 / (2L):
// alpha = b [(2L-1)!!]^{1/L}, scaled by P / sigma^2.
double alpha_for(std::size_t L, double rhosq, double power, double noise) {
    const double Ld = static_cast<double>(L);
    const double root = std::exp(log_double_factorial_odd(L) / Ld);
    return rhosq * power * root / (2.0 * Ld * noise);
}

// sum_{k=0}^{k_terms-1} 2 a^{m+1} b^{k+1} (k+m)! / ((a+b)^{k+m+1} k! (m-1)!)
// with a = "other" alpha, b = this hop's alpha, m = this hop's path count.
double tail_moment(double a, double b, std::size_t k_terms, std::size_t m) {
    const double md = static_cast<double>(m);
    const double log_a = std::log(a);
    const double log_b = std::log(b);
    const double log_ab = std::log(a + b);
    double sum = 0.0;
    for (std::size_t k = 0; k < k_terms; ++k) {
        const double kd = static_cast<double>(k);
        const double log_term = std::log(2.0) + (md + 1.0) * log_a + (kd + 1.0) * log_b + log_factorial(kd + md) -
                                (kd + md + 1.0) * log_ab - log_factorial(kd) - log_factorial(md - 1.0);
        sum += std::exp(log_term);
    }
    return sum;
}

} // namespace

double log_double_factorial_odd(std::size_t L) {
    // (2L-1)!! = (2L)! / (2^L L!)
    const double Ld = static_cast<double>(L);
    return std::lgamma(2.0 * Ld + 1.0) - Ld * std::log(2.0) - std::lgamma(Ld + 1.0);
}

double gain_upper_bound(const PathSet &paths, int num_antennas) {
    const double l1 = paths.coefficient_l1();
    return static_cast<double>(num_antennas) * l1 * l1;
}

double rate_df_upper(const PathSet &g1, const PathSet &f2, const SystemParams &params) {
    return rate_df_from_gains(gain_upper_bound(g1, params.num_antennas), gain_upper_bound(f2, params.num_antennas),
                              params);
}

double rate_af_upper(const PathSet &g1, const PathSet &f2, const SystemParams &params) {
    return rate_af_from_gains(gain_upper_bound(g1, params.num_antennas), gain_upper_bound(f2, params.num_antennas),
                              params);
}

AarParams aar_params(std::size_t paths_rx, std::size_t paths_tx, double rho1sq, double rho2sq,
                     const SystemParams &params) {
    require_paths(paths_rx, "aar_params");
    require_paths(paths_tx, "aar_params");
    AarParams a;
    a.alpha1 = alpha_for(paths_rx, rho1sq, params.p_source, params.noise_relay);
    a.alpha2 = alpha_for(paths_tx, rho2sq, params.p_relay, params.noise_dest);
    a.v1 = rho1sq * (1.0 + (static_cast<double>(paths_rx) - 1.0) * kPi / 4.0);
    a.v2 = rho2sq * (1.0 + (static_cast<double>(paths_tx) - 1.0) * kPi / 4.0);
    return a;
}

DfAarBound aar_df_upper(std::size_t paths_rx, std::size_t paths_tx, double rho1sq, double rho2sq,
                        const SystemParams &params) {
    const AarParams a = aar_params(paths_rx, paths_tx, rho1sq, rho2sq, params);
    DfAarBound out;
    out.alpha1 = a.alpha1;
    out.alpha2 = a.alpha2;
    // I1: relay->destination hop is the minimum, survival of the source hop.
    out.i1 = tail_moment(a.alpha1, a.alpha2, paths_rx, paths_tx);
    out.i2 = tail_moment(a.alpha2, a.alpha1, paths_tx, paths_rx);
    const double N = static_cast<double>(params.num_antennas);
    out.rate = 0.5 * std::log2(1.0 + N * out.i1 + N * out.i2);
    return out;
}

double aar_af_upper(std::size_t paths_rx, std::size_t paths_tx, double rho1sq, double rho2sq,
                    const SystemParams &params) {
    const AarParams a = aar_params(paths_rx, paths_tx, rho1sq, rho2sq, params);
    const double N = static_cast<double>(params.num_antennas);
    return rate_af_from_gains(N * a.v1, N * a.v2, params);
}

double rayleigh_sum_cdf(double zeta, std::size_t num_terms, double alpha) {
    if (zeta < 0.0)
        throw std::domain_error(fmt::format("rayleigh_sum_cdf: zeta must be non-negative, got {}", zeta));
    require_paths(num_terms, "rayleigh_sum_cdf");
    const double u = zeta * zeta / (2.0 * alpha);
    double term = 1.0;
    double partial = 0.0;
    for (std::size_t k = 0; k < num_terms; ++k) {
        partial += term;
        term *= u / static_cast<double>(k + 1);
    }
    return 1.0 - std::exp(-u) * partial;
}

double rayleigh_sum_pdf(double zeta, std::size_t num_terms, double alpha) {
    if (zeta < 0.0)
        throw std::domain_error(fmt::format("rayleigh_sum_pdf: zeta must be non-negative, got {}", zeta));
    require_paths(num_terms, "rayleigh_sum_pdf");
    if (zeta == 0.0)
        return 0.0;
    const double L = static_cast<double>(num_terms);
    const double log_pdf = (2.0 * L - 1.0) * std::log(zeta) - zeta * zeta / (2.0 * alpha) - (L - 1.0) * std::log(2.0) -
                           L * std::log(alpha) - log_factorial(L - 1.0);
    return std::exp(log_pdf);
}

} // namespace marelay
