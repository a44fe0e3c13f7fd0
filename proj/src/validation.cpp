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

#include "marelay/validation.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "marelay/baselines.hpp"
#include "marelay/bounds.hpp"
#include "marelay/optimizer.hpp"

namespace marelay {

namespace {

constexpr std::uint64_t kSeed = 0x5eed'cafe'f00dULL;

ValidationCheck gradient_check(int instances) {
    Rng rng(derive_seed(kSeed, {1}));
    double worst = 0.0;
    const double h = 1e-6;
    for (int i = 0; i < instances; ++i) {
        const auto L = static_cast<std::size_t>(2 + i % 7);
        const PathSet paths = sample_paths(L, 1.0, rng);
        const Vec2 p{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
        const Vec2 g = gain_gradient(p, paths);
        const Vec2 fd{(antenna_gain({p.x + h, p.y}, paths) - antenna_gain({p.x - h, p.y}, paths)) / (2 * h),
                      (antenna_gain({p.x, p.y + h}, paths) - antenna_gain({p.x, p.y - h}, paths)) / (2 * h)};
        const double l1 = paths.coefficient_l1();
        const double floor = 1e-6 * 2.0 * kPi * l1 * l1;
        worst = std::max(worst, (g - fd).norm() / std::max({g.norm(), fd.norm(), floor}));
    }
    return {"gradient matches central differences", worst < 1e-5,
            fmt::format("{} instances, worst relative error {:.3g}", instances, worst)};
}

ValidationCheck af_oracle_check(int instances) {
    Rng rng(derive_seed(kSeed, {2}));
    double worst_rank = 0.0, worst_power = 0.0, worst_rate = 0.0;
    const int sizes[] = {1, 2, 4, 8};
    for (int i = 0; i < instances; ++i) {
        const int N = sizes[i % 4];
        SystemParams params;
        params.num_antennas = N;
        params.p_source = std::pow(10.0, rng.uniform(-1.0, 2.0));
        params.p_relay = std::pow(10.0, rng.uniform(-1.0, 2.0));
        params.noise_relay = std::pow(10.0, rng.uniform(-1.0, 1.0));
        params.noise_dest = std::pow(10.0, rng.uniform(-1.0, 1.0));
        CVector h1(N), h2(N);
        for (int n = 0; n < N; ++n) {
            h1(n) = rng.complex_normal(1.0);
            h2(n) = rng.complex_normal(1.0);
        }
        const AfOracleSolution o = af_beamformer_oracle(h1, h2, params);
        const AfBeamformer b = af_beamformer(h1, h2, params);
        const double closed = rate_af(h1, h2, b.matrix, params);
        worst_rank = std::max(worst_rank, singular_value_ratio(o.matrix));
        worst_power =
            std::max(worst_power, std::abs(relay_power(o.matrix, h1, params) - params.p_relay) / params.p_relay);
        worst_rate = std::max(worst_rate, std::abs(o.rate - closed) / std::max(closed, 1e-300));
    }
    return {"AF beamformer matches the vectorized solve", worst_rank <= 1e-8 && worst_power <= 1e-9 && worst_rate <= 1e-9,
            fmt::format("{} instances, sigma2/sigma1 {:.3g}, power slack {:.3g}, rate mismatch {:.3g}", instances,
                        worst_rank, worst_power, worst_rate)};
}

double survival(double z, std::size_t L, double alpha) {
    const double u = z * z / (2.0 * alpha);
    double term = 1.0, partial = 0.0;
    for (std::size_t k = 0; k < L; ++k) {
        partial += term;
        term *= u / static_cast<double>(k + 1);
    }
    return std::exp(-u) * partial;
}

ValidationCheck integral_check() {
    using boost::math::quadrature::gauss_kronrod;
    double worst = 0.0;
    const SystemParams params = SystemParams::from_snr_db(1, 10.0);
    for (std::size_t lr = 1; lr <= 6; ++lr) {
        for (std::size_t lt = 1; lt <= 6; ++lt) {
            const DfAarBound b = aar_df_upper(lr, lt, 1.0, 1.0, params);
            const auto i1 = [&](double z) {
                return z * z * survival(z, lr, b.alpha1) * rayleigh_sum_pdf(z, lt, b.alpha2);
            };
            const auto i2 = [&](double z) {
                return z * z * survival(z, lt, b.alpha2) * rayleigh_sum_pdf(z, lr, b.alpha1);
            };
            const double q1 = gauss_kronrod<double, 61>::integrate(i1, 0.0, INFINITY, 15, 1e-13);
            const double q2 = gauss_kronrod<double, 61>::integrate(i2, 0.0, INFINITY, 15, 1e-13);
            worst = std::max({worst, std::abs(q1 - b.i1) / q1, std::abs(q2 - b.i2) / q2});
        }
    }
    return {"average DF bound integrals match quadrature", worst < 1e-8,
            fmt::format("L_r, L_t in 1..6, worst relative error {:.3g}", worst)};
}

ValidationCheck moment_check(int draws) {
    double worst = 0.0;
    for (std::size_t L = 1; L <= 8; ++L) {
        Rng rng(derive_seed(kSeed, {3, L}));
        double sum = 0.0;
        for (int d = 0; d < draws; ++d) {
            double s = 0.0;
            for (std::size_t l = 0; l < L; ++l)
                s += std::abs(rng.complex_normal(1.0 / static_cast<double>(L)));
            sum += s * s;
        }
        const double expected = 1.0 + (static_cast<double>(L) - 1.0) * kPi / 4.0;
        worst = std::max(worst, std::abs(sum / draws - expected) / expected);
    }
    return {"second moment of the coefficient l1 norm", worst < 0.02,
            fmt::format("{} draws per L, worst relative error {:.3g}", draws, worst)};
}

ValidationCheck dominance_check(int instances) {
    int violations = 0;
    const Region region{4.0, 0.5, 1.0};
    for (int i = 0; i < instances; ++i) {
        const std::uint64_t seed = derive_seed(kSeed, {4, static_cast<std::uint64_t>(i)});
        const PathSet sr = sample_paths(5, 1.0, derive_seed(seed, {1}));
        const PathSet rd = sample_paths(5, 1.0, derive_seed(seed, {2}));
        const int N = 1 + i % 4;
        const SystemParams params = SystemParams::from_snr_db(N, 10.0);
        const Placement rx = feasible_init(N, region, InitMode::Random, derive_seed(seed, {3}));
        const Placement tx = feasible_init(N, region, InitMode::Random, derive_seed(seed, {4}));
        for (Relaying r : {Relaying::DF, Relaying::AF}) {
            const double rate = placement_rate(rx, tx, sr, rd, params, r);
            const double bound = r == Relaying::DF ? rate_df_upper(sr, rd, params) : rate_af_upper(sr, rd, params);
            if (!(rate >= 0.0 && rate <= bound + 1e-9 * (1.0 + bound)))
                ++violations;
        }
    }
    return {"rates stay below the deterministic bounds", violations == 0,
            fmt::format("{} random placements, {} violations", 2 * instances, violations)};
}

} // namespace

std::vector<ValidationCheck> run_validation(bool fast) {
    const int n = fast ? 100 : 1000;
    return {gradient_check(n), af_oracle_check(n), integral_check(), moment_check(100000),
            dominance_check(n)};
}

} // namespace marelay
