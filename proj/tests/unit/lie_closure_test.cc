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

#include "dqfim/lie_closure.h"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "dense_oracle.h"
#include "dqfim/ansatz.h"

namespace dqfim {
namespace {

std::vector<Eigen::MatrixXcd> dense(const std::vector<PauliSum> &ops) {
    std::vector<Eigen::MatrixXcd> out;
    for (const auto &op : ops) {
        out.push_back(op.to_dense());
    }
    return out;
}

TEST(LieClosureTest, AbelianSingleGenerator) {
    EXPECT_EQ(lie_closure({PauliSum::parse(1, "Z")}, 100).dim(), 1);
}

TEST(LieClosureTest, XAndYCloseToSu2) {
    auto span = lie_closure({PauliSum::parse(1, "X"), PauliSum::parse(1, "Y")}, 100);
    EXPECT_EQ(span.dim(), 3);
    EXPECT_FALSE(span.truncated);
}

TEST(LieClosureTest, BasisIsOrthonormal) {
    auto span = lie_closure(generator_set(Ansatz::build(Family::XY_PERIODIC, 3, 1)), 1000);
    for (int i = 0; i < span.dim(); ++i) {
        for (int j = 0; j < span.dim(); ++j) {
            EXPECT_NEAR(span.basis[static_cast<std::size_t>(i)].dot(span.basis[static_cast<std::size_t>(j)]),
                        i == j ? 1.0 : 0.0, 1e-10);
        }
    }
}

struct FamilyCase {
    Family family;
    int n;
};

class ClosureOracleTest : public ::testing::TestWithParam<FamilyCase> {};

TEST_P(ClosureOracleTest, MatchesDenseClosure) {
    auto gens = generator_set(Ansatz::build(GetParam().family, GetParam().n, 1));
    int expected = oracle::dense_closure_dim(dense(gens));
    auto span = lie_closure(gens, 10000);
    EXPECT_FALSE(span.truncated);
    EXPECT_EQ(span.dim(), expected);
    EXPECT_EQ(lie_closure(gens, 10000, 1e-10, ClosureStrategy::kFullBasis).dim(), expected);
}

TEST_P(ClosureOracleTest, IndependentOfGeneratorOrder) {
    auto gens = generator_set(Ansatz::build(GetParam().family, GetParam().n, 1));
    int reference = lie_closure(gens, 10000).dim();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 3; ++trial) {
        std::shuffle(gens.begin(), gens.end(), rng);
        EXPECT_EQ(lie_closure(gens, 10000).dim(), reference);
    }
}

INSTANTIATE_TEST_SUITE_P(Families, ClosureOracleTest,
                         ::testing::Values(FamilyCase{Family::HE, 2}, FamilyCase{Family::HE, 3},
                                           FamilyCase{Family::XY_PERIODIC, 3}, FamilyCase{Family::XY_OPEN, 3},
                                           FamilyCase{Family::XXZ, 3}, FamilyCase{Family::Y_CZ, 2},
                                           FamilyCase{Family::Y_CZ, 3}, FamilyCase{Family::XY_PERIODIC, 2}));

TEST(LieClosureTest, HardwareEfficientIsFullSpecialUnitary) {
    EXPECT_EQ(lie_closure(generator_set(Ansatz::build(Family::HE, 2, 1)), 1000).dim(), 15);
    EXPECT_EQ(lie_closure(generator_set(Ansatz::build(Family::HE, 3, 1)), 1000).dim(), 63);
}

TEST(LieClosureTest, CapTruncates) {
    auto span = lie_closure(generator_set(Ansatz::build(Family::HE, 3, 1)), 10);
    EXPECT_TRUE(span.truncated);
    EXPECT_EQ(span.dim(), 10);
    EXPECT_THROW(check_rank_bound(5, span), std::logic_error);
}

TEST(LieClosureTest, ExactCapIsNotTruncation) {
    auto span = lie_closure(generator_set(Ansatz::build(Family::HE, 2, 1)), 15);
    EXPECT_FALSE(span.truncated);
    EXPECT_EQ(span.dim(), 15);
}

TEST(LieClosureTest, RankBoundCheck) {
    OperatorSpan span;
    span.basis.assign(15, PauliSum(2));
    EXPECT_TRUE(check_rank_bound(14, span));
    EXPECT_FALSE(check_rank_bound(16, span));
}

TEST(LieClosureTest, RejectsBadArguments) {
    EXPECT_THROW(lie_closure({}, 10), std::invalid_argument);
    EXPECT_THROW(lie_closure({PauliSum::parse(1, "X")}, 0), std::invalid_argument);
    EXPECT_THROW(lie_closure({PauliSum::parse(1, "X"), PauliSum::parse(2, "XX")}, 10), std::invalid_argument);
}

} // namespace
} // namespace dqfim
