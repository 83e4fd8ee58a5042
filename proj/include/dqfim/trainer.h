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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dqfim/ansatz.h"
#include "dqfim/ensemble.h"

namespace dqfim {

enum class Optimizer { BFGS, ADAM, GD };

std::string optimizer_name(Optimizer o);
Optimizer parse_optimizer(std::string_view name);

struct TrainConfig {
    Optimizer optimizer = Optimizer::BFGS;
    /// Adam step size; initial trial step for GD.
    double learning_rate = 0.01;
    int max_steps = 2000;
    double convergence_threshold = 1e-4;
    /// Training continues past convergence until C_train drops below this value
    /// (or a stationary point / max_steps). Values <= 0 mean "stop at convergence".
    double stop_threshold = 0.0;
    /// Gradient norm below which a run above threshold counts as a local minimum.
    double gradient_threshold = 1e-10;
    /// Armijo sufficient-decrease constant and backtracking factor.
    double armijo = 1e-4;
    double backtrack = 0.5;
    int max_backtracks = 60;
    int n_test = 100;
    std::uint64_t test_seed = 0;
};

enum class TrainStatus {
    Converged,
    /// Gradient vanished or no descent step could be found above threshold.
    LocalMinimum,
    MaxSteps,
};

std::string status_name(TrainStatus s);

struct TrainResult {
    ParameterVector theta_star;
    double c_train_final = 1.0;
    double c_test_final = 1.0;
    double c_test_stderr = 0.0;
    /// First step with C_train below threshold; for runs that never get there, the
    /// step at which the optimizer stopped.
    int steps_E = 0;
    /// Steps actually taken before the run stopped.
    int steps_taken = 0;
    bool converged = false;
    TrainStatus status = TrainStatus::MaxSteps;
    std::vector<std::pair<int, double>> cost_history;
    double empirical_risk = 0.0;
};

/// 1 - (1/L) sum_l |<target_l| U(theta) |input_l>|^2.
double cost_train(const Ansatz &ansatz, const ParameterVector &theta, const TrainingSet &set);

struct CostGradient {
    double cost = 0.0;
    Eigen::VectorXd gradient;
};

/// Cost and exact gradient by the adjoint method: per training pair one forward
/// sweep and one backward sweep carrying the bra and the ket.
CostGradient cost_and_gradient(const Ansatz &ansatz, const ParameterVector &theta, const TrainingSet &set);
Eigen::VectorXd grad_cost_train(const Ansatz &ansatz, const ParameterVector &theta, const TrainingSet &set);

struct TestCost {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo test cost 1 - E|<psi| V^dag U(theta) |psi>|^2 with V = target(theta_g).
TestCost cost_test(const Ansatz &ansatz, const ParameterVector &theta, const Ansatz &target,
                   const ParameterVector &theta_g, const EnsembleSpec &spec, int n_test, Rng &rng);
TestCost cost_test(const Ansatz &ansatz, const ParameterVector &theta, const ParameterVector &theta_g,
                   const EnsembleSpec &spec, int n_test, Rng &rng);

/// Minimizes cost_train from theta0, then evaluates the test cost at the result.
TrainResult train(const Ansatz &ansatz, const ParameterVector &theta0, const TrainingSet &set, const Ansatz &target,
                  const ParameterVector &theta_g, const EnsembleSpec &test_spec, const TrainConfig &config);

} // namespace dqfim
