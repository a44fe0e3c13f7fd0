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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <sstream>

#include "marelay/baselines.hpp"
#include "marelay/bounds.hpp"
#include "oracles.hpp"

using namespace marelay;

namespace {

// Brute force over bitmasks with the rates computed from scratch.
struct BruteForce {
    double best_rx = -1, best_tx = -1, best_joint = -1;
};

BruteForce brute_force(const Placement &cand, const PathSet &sr, const PathSet &rd, const SystemParams &s,
                       Relaying relaying) {
    const int M = static_cast<int>(cand.size());
    BruteForce b;
    for (unsigned mask = 0; mask < (1u << M); ++mask) {
        if (std::popcount(mask) != s.num_antennas)
            continue;
        double g1 = 0, g2 = 0;
        for (int m = 0; m < M; ++m)
            if (mask & (1u << m)) {
                g1 += oracle::gain(cand[m].x, cand[m].y, sr);
                g2 += oracle::gain(cand[m].x, cand[m].y, rd);
            }
        b.best_rx = std::max(b.best_rx, g1);
        b.best_tx = std::max(b.best_tx, g2);
        const double joint = relaying == Relaying::DF
                                 ? std::min(s.p_source * g1 / s.noise_relay, s.p_relay * g2 / s.noise_dest)
                                 : s.p_source * s.p_relay * g1 * g2 /
                                       (s.p_relay * s.noise_relay * g2 + s.p_source * s.noise_dest * g1 +
                                        s.noise_relay * s.noise_dest);
        b.best_joint = std::max(b.best_joint, joint);
    }
    return b;
}

Placement pick(const Placement &c, const std::vector<std::size_t> &idx) {
    Placement p;
    for (std::size_t i : idx)
        p.push_back(c[i]);
    return p;
}

} // namespace

TEST(Fpa, HalfWavelengthSquareLayout) {
    const Region r{10.0, 0.5, 1.0};
    const Placement p = fpa_layout(4, r);
    const Placement want{{-0.25, -0.25}, {0.25, -0.25}, {-0.25, 0.25}, {0.25, 0.25}};
    EXPECT_EQ(p, want);
    const Placement six = fpa_layout(6, r);
    ASSERT_EQ(six.size(), 6u);
    EXPECT_EQ(six.front(), (Vec2{-0.5, -0.5}));
    EXPECT_EQ(six.back(), (Vec2{0.5, 0.0}));
    EXPECT_EQ(fpa_layout(1, r), (Placement{{0.0, 0.0}}));
}

TEST(Fpa, ScalesWithWavelength) {
    const Placement p = fpa_layout(2, {5.0, 0.05, 0.1});
    EXPECT_NEAR(p[0].x, -0.025, 1e-15);
    EXPECT_NEAR(p[1].x, 0.025, 1e-15);
}

TEST(Fpa, InfeasibleSettingsThrow) {
    EXPECT_THROW(fpa_layout(4, {10.0, 0.6, 1.0}), InfeasibleError);
    EXPECT_THROW(fpa_layout(16, {1.0, 0.5, 1.0}), InfeasibleError);
    EXPECT_THROW(fpa_layout(0, {1.0, 0.5, 1.0}), std::invalid_argument);
}

TEST(AsCandidates, FpaIsThePrefix) {
    const Region r{10.0, 0.5, 1.0};
    for (int N = 1; N <= 12; ++N) {
        const Placement c = as_candidates(N, r);
        ASSERT_EQ(c.size(), 2u * static_cast<std::size_t>(N));
        EXPECT_TRUE(is_feasible(c, r));
        const Placement f = fpa_layout(N, r);
        EXPECT_TRUE(std::equal(f.begin(), f.end(), c.begin())) << "N = " << N;
    }
    const Placement c = as_candidates(4, r);
    EXPECT_EQ(c[4], (Vec2{-0.25, 0.75}));
    EXPECT_EQ(c[7], (Vec2{0.25, 1.25}));
}

TEST(AntennaSelection, MatchesBruteForceInBothModes) {
    Rng rng(31);
    const Region r{10.0, 0.5, 1.0};
    for (int t = 0; t < 120; ++t) {
        const int N = 1 + t % 5;
        const Relaying rel = t % 2 ? Relaying::AF : Relaying::DF;
        const PathSet sr = sample_paths(5, 1.0, rng), rd = sample_paths(5, 1.0, rng);
        SystemParams s = SystemParams::from_snr_db(N, rng.uniform(0, 20));
        s.p_relay *= rng.uniform(0.2, 5.0);
        const Placement c = as_candidates(N, r);
        const BruteForce bf = brute_force(c, sr, rd, s, rel);

        const SelectionResult ind = antenna_selection(c, sr, rd, s, rel, SubsetMode::Independent);
        const double g1 = channel_gain(pick(c, ind.subset_rx), sr);
        const double g2 = channel_gain(pick(c, ind.subset_tx), rd);
        EXPECT_NEAR(g1, bf.best_rx, 1e-11 * bf.best_rx);
        EXPECT_NEAR(g2, bf.best_tx, 1e-11 * bf.best_tx);
        EXPECT_NEAR(ind.rate, placement_rate(pick(c, ind.subset_rx), pick(c, ind.subset_tx), sr, rd, s, rel), 1e-14);

        const SelectionResult sh = antenna_selection(c, sr, rd, s, rel, SubsetMode::Shared);
        EXPECT_EQ(sh.subset_rx, sh.subset_tx);
        EXPECT_NEAR(sh.rate, 0.5 * std::log2(1.0 + bf.best_joint), 1e-10);
        EXPECT_LE(sh.rate, ind.rate + 1e-12);
        for (const auto *sub : {&ind.subset_rx, &ind.subset_tx, &sh.subset_rx}) {
            ASSERT_EQ(sub->size(), static_cast<std::size_t>(N));
            EXPECT_TRUE(std::is_sorted(sub->begin(), sub->end()));
        }
    }
}

TEST(AntennaSelection, NeverWorseThanFpa) {
    Rng rng(32);
    const Region r{10.0, 0.5, 1.0};
    for (int t = 0; t < 200; ++t) {
        const int N = 1 + t % 6;
        const Relaying rel = t % 2 ? Relaying::AF : Relaying::DF;
        const PathSet sr = sample_paths(5, 1.0, rng), rd = sample_paths(5, 1.0, rng);
        const SystemParams s = SystemParams::from_snr_db(N, 10.0);
        const Placement f = fpa_layout(N, r);
        const double fpa = placement_rate(f, f, sr, rd, s, rel);
        for (SubsetMode m : {SubsetMode::Independent, SubsetMode::Shared})
            EXPECT_GE(antenna_selection(as_candidates(N, r), sr, rd, s, rel, m).rate, fpa - 1e-12);
    }
}

TEST(AntennaSelection, ExactTiesPickTheFirstSubset) {
    const PathSet one({0.1}, {0.1}, {cplx(1.0, 0.0)}, 1.0);
    const Placement c = as_candidates(3, {10.0, 0.5, 1.0});
    const SelectionResult s = antenna_selection(c, one, one, SystemParams::from_snr_db(3, 10), Relaying::DF);
    EXPECT_EQ(s.subset_rx, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(s.subset_tx, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(AntennaSelection, RejectsBadSizes) {
    const PathSet p = sample_paths(2, 1.0, std::uint64_t{1});
    const Region r{20.0, 0.5, 1.0};
    EXPECT_THROW(antenna_selection(fpa_layout(4, r), p, p, SystemParams::from_snr_db(4, 10), Relaying::DF),
                 DimensionError);
    EXPECT_THROW(antenna_selection(as_candidates(13, r), p, p, SystemParams::from_snr_db(13, 10), Relaying::DF),
                 std::invalid_argument);
}

TEST(Otpa, MonotoneFeasibleAndAboveItsStart) {
    Rng rng(33);
    const Region r{10.0, 0.5, 1.0};
    for (int t = 0; t < 100; ++t) {
        const int N = 1 + t % 6;
        const Relaying rel = t % 2 ? Relaying::AF : Relaying::DF;
        const PathSet sr = sample_paths(5, 1.0, rng), rd = sample_paths(5, 1.0, rng);
        const SystemParams s = SystemParams::from_snr_db(N, rng.uniform(0, 20));
        const Placement f = fpa_layout(N, r);
        const OtpaResult o = otpa_optimize(sr, rd, r, s, PgaSchedule{}, rel, f);
        ASSERT_TRUE(is_feasible(o.placement, r));
        for (std::size_t i = 1; i < o.trace.size(); ++i)
            EXPECT_GE(o.trace[i], o.trace[i - 1]);
        for (const AscentTrace &a : o.ascents)
            for (std::size_t i = 1; i < a.values.size(); ++i)
                EXPECT_GE(a.values[i], a.values[i - 1]);
        EXPECT_NEAR(o.rate, 0.5 * std::log2(1.0 + o.trace.back()), 1e-10);
        EXPECT_GE(o.rate, placement_rate(f, f, sr, rd, s, rel) - 1e-12);
        EXPECT_NEAR(o.rate, placement_rate(o.placement, o.placement, sr, rd, s, rel), 1e-14);

        // two-stage refinement from the shared placement can only help
        const OptimizeResult refined = rel == Relaying::DF
                                           ? optimize_df(sr, rd, r, s, PgaSchedule{}, o.placement, o.placement)
                                           : optimize_af(sr, rd, r, s, PgaSchedule{}, o.placement, o.placement);
        EXPECT_GE(refined.rate, o.rate - 1e-12);
        EXPECT_LE(o.rate, (rel == Relaying::DF ? rate_df_upper(sr, rd, s) : rate_af_upper(sr, rd, s)) + 1e-12);
    }
}

TEST(Otpa, SinglePathLandscapesKeepThePlacement) {
    const PathSet g({0.3}, {0.2}, {cplx(0.6, 0.0)}, 1.0), f({-0.7}, {1.1}, {cplx(0.0, 0.9)}, 1.0);
    const Region r{10.0, 0.5, 1.0};
    const SystemParams s = SystemParams::from_snr_db(3, 10.0);
    const Placement init = fpa_layout(3, r);
    const OtpaResult o = otpa_optimize(g, f, r, s, PgaSchedule{}, Relaying::DF, init);
    EXPECT_EQ(o.placement, init);
    EXPECT_NEAR(o.rate, 0.5 * std::log2(1.0 + std::min(30 * 0.36, 30 * 0.81)), 1e-12);
}

TEST(Otpa, RejectsWrongInitialSize) {
    const PathSet p = sample_paths(2, 1.0, std::uint64_t{1});
    const Region r{10.0, 0.5, 1.0};
    EXPECT_THROW(otpa_optimize(p, p, r, SystemParams::from_snr_db(2, 10), PgaSchedule{}, Relaying::DF,
                               fpa_layout(3, r)),
                 DimensionError);
}

TEST(PlacementRate, MatchesGainFormulas) {
    const PathSet sr = sample_paths(4, 1.0, std::uint64_t{2}), rd = sample_paths(3, 1.0, std::uint64_t{3});
    const SystemParams s = SystemParams::from_snr_db(2, 7.0);
    const Placement a{{0.1, 0.2}, {1.0, -0.3}}, b{{-0.7, 0.0}, {0.4, 0.9}};
    EXPECT_NEAR(placement_rate(a, b, sr, rd, s, Relaying::DF),
                rate_df_from_gains(channel_gain(a, sr), channel_gain(b, rd), s), 1e-13);
    EXPECT_NEAR(placement_rate(a, b, sr, rd, s, Relaying::AF),
                rate_af_from_gains(channel_gain(a, sr), channel_gain(b, rd), s), 1e-13);
}

TEST(GainGrid, CsvHasOneLinePerRowAtNineDigits) {
    GainGrid g;
    g.rows = 2;
    g.cols = 3;
    g.values = {1.0, 2.0 / 3.0, 0.1, 123456789.123, 1e-20, 0.0};
    std::ostringstream os;
    g.write_csv(os);
    EXPECT_EQ(os.str(), "1,0.666666667,0.1\n123456789,1e-20,0\n");
}
