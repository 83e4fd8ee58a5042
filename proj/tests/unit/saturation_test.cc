// Copyright 2026 The dqfim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqfim/saturation.h"

#include <gtest/gtest.h>

namespace dqfim {
namespace {

using Kind = EnsembleSpec::Kind;

RankProtocol quick_protocol() {
    RankProtocol p;
    p.n_theta = 2;
    p.n_data = 1;
    p.g_max = 60;
    return p;
}

TEST(SaturationTest, DepthSchedule) {
    EXPECT_EQ(depth_schedule(20), (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 18}));
    EXPECT_EQ(depth_schedule(3), (std::vector<int>{1, 2, 3}));
    EXPECT_TRUE(depth_schedule(0).empty());
}

TEST(SaturationTest, NestedStatesArePrefixes) {
    EnsembleSpec haar{Kind::HAAR, 0};
    auto big = nested_states(haar, 3, 5, 11, 2);
    auto small = nested_states(haar, 3, 2, 11, 2);
    EXPECT_EQ(big[1].amplitudes(), small[1].amplitudes());
    auto other = nested_states(haar, 3, 2, 11, 3);
    EXPECT_NE(big[0].amplitudes(), other[0].amplitudes());
}

TEST(SaturationTest, HardwareEfficientTwoQubitsFollowsIsometryCount) {
    auto prof = compute_saturation_profile(Family::HE, 2, {Kind::HAAR, 0}, 5, quick_protocol());
    std::vector<int> r;
    for (const auto &rec : prof.records) {
        r.push_back(rec.R_L);
    }
    EXPECT_EQ(r, (std::vector<int>{6, 11, 14, 15, 15}));
    EXPECT_EQ(prof.R_inf, 15);
    EXPECT_EQ(prof.L_c, 4);
    EXPECT_DOUBLE_EQ(prof.L_c_approx, 5.0);
    EXPECT_TRUE(prof.l_plateau);
    EXPECT_EQ(prof.cells.size(), 5u);
    for (const auto &rec : prof.records) {
        EXPECT_GE(rec.M_c, rec.R_L);
    }
}

TEST(SaturationTest, CommutingGeneratorsGiveRankAtMostOne) {
    for (Kind kind : {Kind::HAAR, Kind::PRODUCT, Kind::COMPUTATIONAL_BASIS}) {
        auto prof = compute_saturation_profile(Family::Z_TOY, 1, {kind, 0}, 2, quick_protocol());
        for (const auto &rec : prof.records) {
            EXPECT_LE(rec.R_L, 1);
        }
    }
}

TEST(SaturationTest, MaxRankMatchesProfileRedrawZero) {
    auto est = estimate_max_rank(Family::XY_OPEN, 3, {Kind::PRODUCT, 0}, 1, quick_protocol());
    EXPECT_EQ(est.R, 9);
    EXPECT_EQ(est.projector_rank, 1);
    EXPECT_FALSE(est.curve.empty());
    EXPECT_EQ(est.curve.back().D, est.R);
}

TEST(SaturationTest, NoPlateauWhenDepthBudgetIsTooSmall) {
    RankProtocol p = quick_protocol();
    p.g_max = 2;
    p.stop_at_bound = false;
    try {
        estimate_max_rank(Family::HE, 2, {Kind::HAAR, 0}, 1, p);
        FAIL() << "expected NoPlateauError";
    } catch (const NoPlateauError &e) {
        EXPECT_EQ(e.curve().size(), 2u);
    }
}

TEST(SaturationTest, ProfileReportsMissingLPlateau) {
    auto prof = compute_saturation_profile(Family::HE, 2, {Kind::HAAR, 0}, 2, quick_protocol());
    EXPECT_FALSE(prof.l_plateau);
    EXPECT_THROW(saturation_profile(Family::HE, 2, {Kind::HAAR, 0}, 2, quick_protocol()), NoPlateauError);
}

TEST(SaturationTest, ResultsDoNotDependOnWorkerCount) {
    RankProtocol one = quick_protocol();
    one.n_data = 2;
    RankProtocol many = one;
    many.workers = 4;
    auto a = compute_saturation_profile(Family::XY_PERIODIC, 3, {Kind::HAAR, 0}, 3, one);
    auto b = compute_saturation_profile(Family::XY_PERIODIC, 3, {Kind::HAAR, 0}, 3, many);
    for (int L = 1; L <= 3; ++L) {
        EXPECT_EQ(a.R(L), b.R(L));
        EXPECT_EQ(a.M_c(L), b.M_c(L));
    }
    EXPECT_THROW(a.R(4), std::out_of_range);
}

} // namespace
} // namespace dqfim
