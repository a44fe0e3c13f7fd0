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

#include "marelay/optimizer.hpp"
#include "marelay/types.hpp"

using namespace marelay;

TEST(Geometry, InsideRegionIncludesBoundary) {
    const Region r{4.0, 0.5, 1.0};
    EXPECT_TRUE(inside_region({2.0, -2.0}, r));
    EXPECT_TRUE(inside_region({0.0, 0.0}, r));
    EXPECT_FALSE(inside_region({2.0000001, 0.0}, r));
    EXPECT_FALSE(inside_region({0.0, -2.1}, r));
}

TEST(Geometry, SpacingAtExactlyDIsAllowed) {
    const Region r{4.0, 0.5, 1.0};
    const Placement p{{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}};
    EXPECT_TRUE(is_feasible(p, r));
    EXPECT_FALSE(spacing_ok({0.49, 0.0}, p, 1, r));
    EXPECT_FALSE(spacing_ok({0.49, 0.0}, p, 0, r)); // (0.5, 0) is still 0.01 away
    EXPECT_TRUE(spacing_ok({1.0, 1.0}, p, 5, r));
}

TEST(Geometry, RequireFeasibleNamesTheViolation) {
    const Region r{2.0, 0.5, 1.0};
    try {
        require_feasible({{0.0, 0.0}, {3.0, 0.0}}, r, "ctx");
        FAIL();
    } catch (const InfeasibleError &e) {
        EXPECT_NE(std::string(e.what()).find("outside"), std::string::npos);
    }
    try {
        require_feasible({{0.0, 0.0}, {0.1, 0.0}}, r, "ctx");
        FAIL();
    } catch (const InfeasibleError &e) {
        EXPECT_NE(std::string(e.what()).find("closer"), std::string::npos);
    }
    EXPECT_THROW(require_feasible({}, r, "ctx"), InfeasibleError);
}

TEST(Geometry, RegionValidation) {
    EXPECT_THROW((Region{0.0, 0.5, 1.0}.validate()), std::invalid_argument);
    EXPECT_THROW((Region{1.0, -0.5, 1.0}.validate()), std::invalid_argument);
    EXPECT_THROW((Region{1.0, 0.5, 0.0}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((Region{1.0, 0.5, 1.0}.validate()));
}

TEST(Projection, ClampsEachCoordinate) {
    const Region r{4.0, 0.5, 1.0};
    EXPECT_EQ(project({-3.0, 1.0}, r), (Vec2{-2.0, 1.0}));
    EXPECT_EQ(project({0.3, -0.7}, r), (Vec2{0.3, -0.7}));
    EXPECT_EQ(project({9.0, -9.0}, r), (Vec2{2.0, -2.0}));
}

TEST(Projection, IdempotentAndFeasible) {
    const Region r{3.0, 0.5, 1.0};
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Vec2 p{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        const Vec2 q = project(p, r);
        EXPECT_EQ(project(q, r), q);
        EXPECT_TRUE(inside_region(q, r));
    }
}

TEST(FeasibleInit, UniformGridIsCentredLattice) {
    const Region r{10.0, 0.5, 1.0};
    const Placement p = feasible_init(6, r, InitMode::UniformGrid);
    ASSERT_EQ(p.size(), 6u);
    // 3 x 3 lattice, pitch 1/2, centred: x0 = y0 = -0.5
    EXPECT_EQ(p[0], (Vec2{-0.5, -0.5}));
    EXPECT_EQ(p[2], (Vec2{0.5, -0.5}));
    EXPECT_EQ(p[3], (Vec2{-0.5, 0.0}));
    EXPECT_EQ(p[5], (Vec2{0.5, 0.0}));
    EXPECT_TRUE(is_feasible(p, r));
}

TEST(FeasibleInit, PitchFollowsLargerSpacing) {
    const Region r{10.0, 1.5, 1.0};
    const Placement p = feasible_init(4, r, InitMode::UniformGrid);
    EXPECT_DOUBLE_EQ((p[1] - p[0]).norm(), 1.5);
    EXPECT_TRUE(is_feasible(p, r));
}

TEST(FeasibleInit, RandomIsFeasibleAndSeeded) {
    const Region r{3.0, 0.5, 1.0};
    for (std::uint64_t s = 0; s < 50; ++s) {
        const Placement p = feasible_init(8, r, InitMode::Random, s);
        EXPECT_TRUE(is_feasible(p, r));
        EXPECT_EQ(p, feasible_init(8, r, InitMode::Random, s));
    }
}

TEST(FeasibleInit, ImpossibleRequestsThrow) {
    EXPECT_THROW(feasible_init(9, Region{0.5, 0.5, 1.0}, InitMode::UniformGrid), InfeasibleError);
    EXPECT_THROW(feasible_init(50, Region{1.0, 0.5, 1.0}, InitMode::Random, 3), InfeasibleError);
    EXPECT_THROW(feasible_init(0, Region{}, InitMode::UniformGrid), std::invalid_argument);
}
