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

#include "dqfim/trainer.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dense_oracle.h"

namespace dqfim {
namespace {

using Kind = EnsembleSpec::Kind;

struct Problem {
    Ansatz ansatz;
    ParameterVector theta_g;
    TrainingSet set;
};

Problem make_problem(Family f, int n, int G, int L, EnsembleSpec spec, std::uint64_t seed) {
    Ansatz a = Ansatz::build(f, n, G);
    Rng rng(seed);
    ParameterVector tg = random_parameters(a, rng);
    TrainingSet set = build_training_set(a, tg, spec, L, seed + 1);
    return {a, tg, set};
}

StateVector plus_state() {
    Eigen::VectorXcd v(2);
    v << 1, 1;
    return StateVector::normalized(1, v);
}

TEST(TrainerTest, CostVanishesAtGeneratingParameters) {
    auto p = make_problem(Family::HE, 3, 3, 4, {Kind::HAAR, 0}, 5);
    EXPECT_NEAR(cost_train(p.ansatz, p.theta_g, p.set), 0.0, 1e-12);
    EXPECT_LT(grad_cost_train(p.ansatz, p.theta_g, p.set).norm(), 1e-9);
    Rng rng(3);
    auto t = cost_test(p.ansatz, p.theta_g, p.ansatz, p.theta_g, {Kind::HAAR, 0}, 20, rng);
    EXPECT_NEAR(t.value, 0.0, 1e-12);
}

TEST(TrainerTest, SingleQubitAnalyticCost) {
    Ansatz a = Ansatz::build(Family::Z_TOY, 1, 1);
    ParameterVector tg(1);
    tg << std::numbers::pi / 2;
    TrainingSet set;
    set.inputs = {plus_state()};
    set.targets = {apply_circuit(a, tg, plus_state())};
    ParameterVector zero = ParameterVector::Zero(1);
    EXPECT_NEAR(cost_train(a, zero, set), 1.0, 1e-14);
    EXPECT_NEAR(grad_cost_train(a, zero, set)[0], 0.0, 1e-14);
    // C(theta) = 1 - cos^2(theta - pi/2), so dC/dtheta = sin(2 (theta - pi/2)).
    ParameterVector t(1);
    t << 0.3;
    EXPECT_NEAR(cost_train(a, t, set), 1.0 - std::pow(std::cos(0.3 - std::numbers::pi / 2), 2), 1e-14);
    EXPECT_NEAR(grad_cost_train(a, t, set)[0], std::sin(2 * (0.3 - std::numbers::pi / 2)), 1e-14);
}

TEST(TrainerTest, GlobalPhaseIsInvisibleToTestCost) {
    Ansatz a = Ansatz::build(Family::HE, 2, 2);
    Rng rng(9);
    ParameterVector tg = random_parameters(a, rng);
    std::vector<CircuitElement> layer = a.layer();
    // A trainee that differs from the target by the phase exp(-i 0.4).
    layer.emplace_back(ParamRotation{Pauli::I, 0, 0});
    Ansatz phased = Ansatz::from_layer(2, layer, 2);
    ParameterVector tp(phased.n_params());
    for (int g = 0; g < 2; ++g) {
        tp.segment(g * 5, 4) = tg.segment(g * 4, 4);
        tp[g * 5 + 4] = 0.2;
    }
    auto t = cost_test(phased, tp, a, tg, {Kind::HAAR, 0}, 10, rng);
    EXPECT_NEAR(t.value, 0.0, 1e-12);
}

class GradientTest : public ::testing::TestWithParam<Family> {};

TEST_P(GradientTest, MatchesCentralDifferences) {
    const int n = GetParam() == Family::HE ? 3 : 4;
    auto p = make_problem(GetParam(), n, 3, 3, {Kind::HAAR, 0}, 21);
    Rng rng(22);
    ParameterVector theta = random_parameters(p.ansatz, rng);
    CostGradient cg = cost_and_gradient(p.ansatz, theta, p.set);
    EXPECT_NEAR(cg.cost, cost_train(p.ansatz, theta, p.set), 1e-14);
    const double h = 1e-5;
    for (int m = 0; m < p.ansatz.n_params(); ++m) {
        ParameterVector tp = theta;
        ParameterVector tm = theta;
        tp[m] += h;
        tm[m] -= h;
        double fd = (cost_train(p.ansatz, tp, p.set) - cost_train(p.ansatz, tm, p.set)) / (2 * h);
        EXPECT_NEAR(cg.gradient[m], fd, 1e-6) << "param " << m;
    }
}

INSTANTIATE_TEST_SUITE_P(Families, GradientTest,
                         ::testing::Values(Family::HE, Family::XY_PERIODIC, Family::XY_OPEN, Family::XXZ,
                                           Family::Y_CZ));

TEST(TrainerTest, RandomParametersGiveNearMaximalCost) {
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto p = make_problem(Family::HE, 4, 4, 8, {Kind::HAAR, 0}, 100 + seed);
        Rng rng(seed);
        double c = cost_train(p.ansatz, random_parameters(p.ansatz, rng), p.set);
        inside += c >= 0.9 && c <= 1.0;
    }
    EXPECT_GE(inside, 19);
}

TEST(TrainerTest, StartingAtTheMinimumConvergesImmediately) {
    auto p = make_problem(Family::HE, 2, 3, 2, {Kind::HAAR, 0}, 8);
    auto res = train(p.ansatz, p.theta_g, p.set, p.ansatz, p.theta_g, {Kind::HAAR, 0}, TrainConfig{});
    EXPECT_TRUE(res.converged);
    EXPECT_EQ(res.steps_E, 0);
    EXPECT_EQ(res.status, TrainStatus::Converged);
    EXPECT_NEAR(res.c_test_final, 0.0, 1e-12);
}

TEST(TrainerTest, OneStepBudgetDoesNotConverge) {
    auto p = make_problem(Family::HE, 3, 4, 4, {Kind::HAAR, 0}, 12);
    Rng rng(1);
    TrainConfig cfg;
    cfg.max_steps = 1;
    auto res = train(p.ansatz, random_parameters(p.ansatz, rng), p.set, p.ansatz, p.theta_g, {Kind::HAAR, 0}, cfg);
    EXPECT_FALSE(res.converged);
    EXPECT_EQ(res.status, TrainStatus::MaxSteps);
    EXPECT_EQ(res.steps_taken, 1);
}

TEST(TrainerTest, OptimizersReduceTheCost) {
    for (Optimizer opt : {Optimizer::BFGS, Optimizer::ADAM, Optimizer::GD}) {
        auto p = make_problem(Family::HE, 2, 4, 4, {Kind::HAAR, 0}, 30);
        Rng rng(31);
        ParameterVector t0 = random_parameters(p.ansatz, rng);
        TrainConfig cfg;
        cfg.optimizer = opt;
        cfg.max_steps = 300;
        cfg.learning_rate = 0.05;
        auto res = train(p.ansatz, t0, p.set, p.ansatz, p.theta_g, {Kind::HAAR, 0}, cfg);
        EXPECT_LT(res.c_train_final, cost_train(p.ansatz, t0, p.set)) << optimizer_name(opt);
        EXPECT_FALSE(res.cost_history.empty());
    }
}

TEST(TrainerTest, OverparameterizedCompleteDataGeneralizes) {
    // HE at N = 2 with M = 48 >= 15 and L = 4 = d spanning the whole space.
    int good = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto p = make_problem(Family::HE, 2, 6, 4, {Kind::HAAR, 0}, 40 + seed);
        Rng rng(seed);
        TrainConfig cfg;
        cfg.stop_threshold = 1e-8;
        cfg.test_seed = seed;
        auto res = train(p.ansatz, random_parameters(p.ansatz, rng), p.set, p.ansatz, p.theta_g, {Kind::HAAR, 0},
                         cfg);
        good += res.converged && res.c_test_final < 1e-4;
    }
    EXPECT_GE(good, 4);
}

TEST(TrainerTest, DeterministicGivenSeeds) {
    auto p = make_problem(Family::XY_PERIODIC, 3, 3, 2, {Kind::PRODUCT, 0}, 50);
    Rng r1(4);
    ParameterVector t0 = random_parameters(p.ansatz, r1);
    TrainConfig cfg;
    cfg.test_seed = 77;
    auto a = train(p.ansatz, t0, p.set, p.ansatz, p.theta_g, {Kind::PRODUCT, 0}, cfg);
    auto b = train(p.ansatz, t0, p.set, p.ansatz, p.theta_g, {Kind::PRODUCT, 0}, cfg);
    EXPECT_EQ(a.theta_star, b.theta_star);
    EXPECT_EQ(a.c_test_final, b.c_test_final);
    EXPECT_EQ(a.steps_E, b.steps_E);
}

TEST(TrainerTest, Validation) {
    auto p = make_problem(Family::HE, 2, 1, 1, {Kind::HAAR, 0}, 1);
    TrainingSet empty;
    EXPECT_THROW(cost_train(p.ansatz, p.theta_g, empty), std::invalid_argument);
    TrainConfig bad;
    bad.max_steps = 0;
    EXPECT_THROW(train(p.ansatz, p.theta_g, p.set, p.ansatz, p.theta_g, {Kind::HAAR, 0}, bad), std::invalid_argument);
    Rng rng(1);
    EXPECT_THROW(cost_test(p.ansatz, p.theta_g, p.theta_g, {Kind::HAAR, 0}, 0, rng), std::invalid_argument);
    EXPECT_EQ(parse_optimizer("adam"), Optimizer::ADAM);
    EXPECT_THROW(parse_optimizer("sgd2"), std::invalid_argument);
    EXPECT_EQ(status_name(TrainStatus::Converged), "converged");
}

} // namespace
} // namespace dqfim
