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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dqfim {

namespace {

void check_set(const Ansatz &ansatz, const TrainingSet &set) {
    if (set.inputs.empty() || set.inputs.size() != set.targets.size()) {
        throw std::invalid_argument("training set must hold L >= 1 matching input/target pairs");
    }
    for (std::size_t l = 0; l < set.inputs.size(); ++l) {
        if (set.inputs[l].n_qubits() != ansatz.n_qubits() || set.targets[l].n_qubits() != ansatz.n_qubits()) {
            throw std::invalid_argument("training state width does not match ansatz");
        }
    }
}

void check_finite(double cost, const Eigen::VectorXd &grad) {
    if (!std::isfinite(cost) || !grad.allFinite()) {
        throw std::runtime_error("non-finite cost or gradient during training");
    }
}

struct Objective {
    const Ansatz &ansatz;
    const TrainingSet &set;
    CostGradient operator()(const ParameterVector &theta) const { return cost_and_gradient(ansatz, theta, set); }
    double value(const ParameterVector &theta) const { return cost_train(ansatz, theta, set); }
};

} // namespace

std::string optimizer_name(Optimizer o) {
    switch (o) {
    case Optimizer::BFGS: return "bfgs";
    case Optimizer::ADAM: return "adam";
    case Optimizer::GD: return "gd";
    }
    return "unknown";
}

Optimizer parse_optimizer(std::string_view name) {
    if (name == "bfgs") return Optimizer::BFGS;
    if (name == "adam") return Optimizer::ADAM;
    if (name == "gd") return Optimizer::GD;
    throw std::invalid_argument("unknown optimizer '" + std::string(name) + "' (expected bfgs, adam or gd)");
}

std::string status_name(TrainStatus s) {
    switch (s) {
    case TrainStatus::Converged: return "converged";
    case TrainStatus::LocalMinimum: return "local_minimum";
    case TrainStatus::MaxSteps: return "max_steps";
    }
    return "unknown";
}

double cost_train(const Ansatz &ansatz, const ParameterVector &theta, const TrainingSet &set) {
    check_set(ansatz, set);
    double fid = 0.0;
    for (std::size_t l = 0; l < set.inputs.size(); ++l) {
        Eigen::VectorXcd psi = set.inputs[l].amplitudes();
        apply_circuit_inplace(ansatz, theta, psi);
        fid += std::norm(set.targets[l].amplitudes().dot(psi));
    }
    return 1.0 - fid / static_cast<double>(set.inputs.size());
}

CostGradient cost_and_gradient(const Ansatz &ansatz, const ParameterVector &theta, const TrainingSet &set) {
    check_set(ansatz, set);
    check_parameters(ansatz, theta);
    const auto L = static_cast<double>(set.inputs.size());
    CostGradient out{0.0, Eigen::VectorXd::Zero(ansatz.n_params())};
    double fid = 0.0;
    const auto &els = ansatz.elements();
    for (std::size_t l = 0; l < set.inputs.size(); ++l) {
        Eigen::VectorXcd phi = set.inputs[l].amplitudes();
        apply_circuit_inplace(ansatz, theta, phi);
        Eigen::VectorXcd lambda = set.targets[l].amplitudes();
        const cplx f = lambda.dot(phi);
        fid += std::norm(f);
        Eigen::VectorXcd scratch(phi.size());
        auto phi_span = amplitude_span(phi);
        auto lambda_span = amplitude_span(lambda);
        auto scratch_span = amplitude_span(scratch);
        // Invariant: phi = U_{<=e} |input>, lambda = U_{>e}^dag |target>.
        for (auto it = els.rbegin(); it != els.rend(); ++it) {
            if (const auto *r = std::get_if<ParamRotation>(&*it)) {
                scratch = phi;
                apply_pauli(scratch_span, r->axis, r->qubit);
                // d f = <lambda| (-i P) |phi>
                cplx df = cplx(0, -1) * lambda.dot(scratch);
                out.gradient[r->param] += -2.0 / L * (std::conj(f) * df).real();
                double t = theta[r->param];
                apply_pauli_rotation(phi_span, r->axis, r->qubit, -t);
                apply_pauli_rotation(lambda_span, r->axis, r->qubit, -t);
            } else {
                const auto &inv = std::get<FixedGate>(*it).inverse;
                inv.apply(phi_span);
                inv.apply(lambda_span);
            }
        }
    }
    out.cost = 1.0 - fid / L;
    return out;
}

Eigen::VectorXd grad_cost_train(const Ansatz &ansatz, const ParameterVector &theta, const TrainingSet &set) {
    return cost_and_gradient(ansatz, theta, set).gradient;
}

TestCost cost_test(const Ansatz &ansatz, const ParameterVector &theta, const Ansatz &target,
                   const ParameterVector &theta_g, const EnsembleSpec &spec, int n_test, Rng &rng) {
    if (n_test < 1) {
        throw std::invalid_argument("cost_test needs n_test >= 1");
    }
    if (target.n_qubits() != ansatz.n_qubits()) {
        throw std::invalid_argument("target and trainee act on different widths");
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n_test; ++i) {
        StateVector psi = sample_state(spec, ansatz.n_qubits(), rng);
        Eigen::VectorXcd u = psi.amplitudes();
        Eigen::VectorXcd v = psi.amplitudes();
        apply_circuit_inplace(ansatz, theta, u);
        apply_circuit_inplace(target, theta_g, v);
        double c = 1.0 - std::norm(v.dot(u));
        sum += c;
        sum_sq += c * c;
    }
    double n = n_test;
    double mean = sum / n;
    double var = n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
    return TestCost{mean, std::sqrt(var / n)};
}

TestCost cost_test(const Ansatz &ansatz, const ParameterVector &theta, const ParameterVector &theta_g,
                   const EnsembleSpec &spec, int n_test, Rng &rng) {
    return cost_test(ansatz, theta, ansatz, theta_g, spec, n_test, rng);
}

namespace {

struct Loop {
    const TrainConfig &cfg;
    TrainResult &res;
    int step = 0;

    /// Records the cost at the current step; returns true when the run should stop.
    bool record(double cost, double grad_norm) {
        res.cost_history.emplace_back(step, cost);
        if (!res.converged && cost < cfg.convergence_threshold) {
            res.status = TrainStatus::Converged;
            res.converged = true;
            res.steps_E = step;
        }
        const double stop = std::min(cfg.stop_threshold, cfg.convergence_threshold);
        if (res.converged && (stop <= 0.0 || cost < stop)) {
            return true;
        }
        if (grad_norm < cfg.gradient_threshold) {
            if (!res.converged) {
                res.status = TrainStatus::LocalMinimum;
            }
            return true;
        }
        if (step >= cfg.max_steps) {
            if (!res.converged) {
                res.status = TrainStatus::MaxSteps;
            }
            return true;
        }
        return false;
    }
};

constexpr double kRoundingGuard = 4 * std::numeric_limits<double>::epsilon();

/// Backtracking Armijo search along p. Returns the accepted step length or 0.
double line_search(const Objective &obj, const ParameterVector &x, double f, double slope, const Eigen::VectorXd &p,
                   double alpha, const TrainConfig &cfg, double &f_new) {
    for (int k = 0; k < cfg.max_backtracks; ++k) {
        f_new = obj.value(x + alpha * p);
        // Near a stationary point the Armijo test alone accepts steps whose gain is
        // pure rounding, so the decrease must also exceed a few ulps of f.
        if (std::isfinite(f_new) && f_new < f - kRoundingGuard * std::abs(f) && f_new <= f + cfg.armijo * alpha * slope) {
            return alpha;
        }
        alpha *= cfg.backtrack;
    }
    return 0.0;
}

void run_bfgs(const Objective &obj, ParameterVector &x, Loop &loop) {
    const auto m = x.size();
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m);
    bool scaled = false;
    CostGradient cg = obj(x);
    check_finite(cg.cost, cg.gradient);
    while (!loop.record(cg.cost, cg.gradient.norm())) {
        Eigen::VectorXd p = -h * cg.gradient;
        double slope = cg.gradient.dot(p);
        if (!(slope < 0)) {
            h.setIdentity();
            p = -cg.gradient;
            slope = -cg.gradient.squaredNorm();
        }
        double f_new = 0.0;
        double alpha = line_search(obj, x, cg.cost, slope, p, 1.0, loop.cfg, f_new);
        if (alpha == 0.0 && !h.isIdentity()) {
            // Curvature model went stale; retry along steepest descent.
            h.setIdentity();
            p = -cg.gradient;
            slope = -cg.gradient.squaredNorm();
            alpha = line_search(obj, x, cg.cost, slope, p, 1.0, loop.cfg, f_new);
        }
        if (alpha == 0.0) {
            if (!loop.res.converged) {
                loop.res.status = TrainStatus::LocalMinimum;
            }
            return;
        }
        Eigen::VectorXd s = alpha * p;
        x += s;
        CostGradient next = obj(x);
        check_finite(next.cost, next.gradient);
        Eigen::VectorXd y = next.gradient - cg.gradient;
        double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (!scaled) {
                h *= sy / y.squaredNorm();
                scaled = true;
            }
            double rho = 1.0 / sy;
            Eigen::VectorXd hy = h * y;
            double yhy = y.dot(hy);
            // H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded.
            h.noalias() += (rho * rho * yhy + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
        }
        cg = std::move(next);
        ++loop.step;
    }
}

void run_gd(const Objective &obj, ParameterVector &x, Loop &loop) {
    double alpha = loop.cfg.learning_rate > 0 ? loop.cfg.learning_rate : 1.0;
    CostGradient cg = obj(x);
    check_finite(cg.cost, cg.gradient);
    while (!loop.record(cg.cost, cg.gradient.norm())) {
        Eigen::VectorXd p = -cg.gradient;
        double f_new = 0.0;
        double a = line_search(obj, x, cg.cost, -p.squaredNorm(), p, 2.0 * alpha, loop.cfg, f_new);
        if (a == 0.0) {
            if (!loop.res.converged) {
                loop.res.status = TrainStatus::LocalMinimum;
            }
            return;
        }
        alpha = a;
        x += a * p;
        cg = obj(x);
        check_finite(cg.cost, cg.gradient);
        ++loop.step;
    }
}

void run_adam(const Objective &obj, ParameterVector &x, Loop &loop) {
    constexpr double b1 = 0.9;
    constexpr double b2 = 0.999;
    constexpr double eps = 1e-8;
    Eigen::VectorXd m1 = Eigen::VectorXd::Zero(x.size());
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(x.size());
    CostGradient cg = obj(x);
    check_finite(cg.cost, cg.gradient);
    while (!loop.record(cg.cost, cg.gradient.norm())) {
        int t = loop.step + 1;
        m1 = b1 * m1 + (1 - b1) * cg.gradient;
        m2 = b2 * m2 + (1 - b2) * cg.gradient.cwiseAbs2();
        Eigen::VectorXd mh = m1 / (1 - std::pow(b1, t));
        Eigen::VectorXd vh = m2 / (1 - std::pow(b2, t));
        x -= loop.cfg.learning_rate * (mh.array() / (vh.array().sqrt() + eps)).matrix();
        cg = obj(x);
        check_finite(cg.cost, cg.gradient);
        ++loop.step;
    }
}

} // namespace

TrainResult train(const Ansatz &ansatz, const ParameterVector &theta0, const TrainingSet &set, const Ansatz &target,
                  const ParameterVector &theta_g, const EnsembleSpec &test_spec, const TrainConfig &config) {
    check_parameters(ansatz, theta0);
    check_set(ansatz, set);
    if (config.max_steps < 1 || !(config.convergence_threshold > 0) || !(config.gradient_threshold > 0)) {
        throw std::invalid_argument("train config needs max_steps >= 1 and positive thresholds");
    }
    TrainResult res;
    Objective obj{ansatz, set};
    ParameterVector x = theta0;
    Loop loop{config, res};
    switch (config.optimizer) {
    case Optimizer::BFGS: run_bfgs(obj, x, loop); break;
    case Optimizer::GD: run_gd(obj, x, loop); break;
    case Optimizer::ADAM: run_adam(obj, x, loop); break;
    }
    res.steps_taken = loop.step;
    if (!res.converged) {
        // Runs that never cross the threshold report the step at which they stopped.
        res.steps_E = loop.step;
    }
    res.theta_star = x;
    res.c_train_final = res.cost_history.empty() ? cost_train(ansatz, x, set) : res.cost_history.back().second;
    Rng rng(config.test_seed);
    TestCost tc = cost_test(ansatz, x, target, theta_g, test_spec, config.n_test, rng);
    res.c_test_final = tc.value;
    res.c_test_stderr = tc.std_error;
    res.empirical_risk = res.c_test_final - res.c_train_final;
    return res;
}

} // namespace dqfim
