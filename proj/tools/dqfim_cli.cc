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

// Command-line front end: rank, dla, train, sweep and bound subcommands.
//
// Every option may also come from a flat key = value file given with
// --config. DQFIM_OUTPUT_DIR and DQFIM_WORKERS override the output directory
// and worker count when the matching flags are absent.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dqfim/experiment.h"
#include "dqfim/parallel.h"

namespace {

using dqfim::ConfigError;
using dqfim::ExperimentConfig;

struct RawOptions {
    std::string id = "run";
    std::string family = "he";
    int n = 4;
    std::string g = "1";
    std::string l = "1";
    int l_max = 1;
    std::string ensemble = "haar";
    std::string test_ensemble;
    int reps = 1;
    std::uint64_t seed = 1;
    int target_g = 0;
    bool theta0_from_target = false;
    std::string preset = "polish";
    std::string optimizer;
    double lr = -1;
    int max_steps = -1;
    double threshold = -1;
    double stop_threshold = -1;
    int n_test = -1;
    int n_theta = 5;
    int n_data = 3;
    int window = 3;
    int g_max = 400;
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    bool no_bound_stop = false;
    int cap = 100000;
    int workers = 0;
    std::string output;
    bool wall_time = false;
    std::int64_t bound_d = 0;
    std::int64_t bound_l = 1;
};

ExperimentConfig resolve(const RawOptions &o) {
    ExperimentConfig c;
    c.experiment_id = o.id;
    try {
        c.family = dqfim::parse_family(o.family);
        c.ensemble = dqfim::EnsembleSpec::parse(o.ensemble);
        if (!o.test_ensemble.empty()) {
            c.test_ensemble = dqfim::EnsembleSpec::parse(o.test_ensemble);
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }
    c.n_qubits = o.n;
    c.g_grid = dqfim::parse_int_list(o.g);
    c.l_grid = dqfim::parse_int_list(o.l);
    c.l_max = o.l_max;
    c.reps = o.reps;
    c.master_seed = o.seed;
    c.target_g = o.target_g;
    c.theta0_from_target = o.theta0_from_target;
    c.preset = o.preset;
    c.train = dqfim::train_preset(o.preset);
    if (!o.optimizer.empty()) {
        try {
            c.train.optimizer = dqfim::parse_optimizer(o.optimizer);
        } catch (const std::exception &e) {
            throw ConfigError(e.what());
        }
    }
    if (o.lr > 0) c.train.learning_rate = o.lr;
    if (o.max_steps >= 0) c.train.max_steps = o.max_steps;
    if (o.threshold >= 0) c.train.convergence_threshold = o.threshold;
    if (o.stop_threshold >= 0) c.train.stop_threshold = o.stop_threshold;
    if (o.n_test >= 0) c.train.n_test = o.n_test;
    c.protocol.n_theta = o.n_theta;
    c.protocol.n_data = o.n_data;
    c.protocol.plateau_window = o.window;
    c.protocol.g_max = o.g_max;
    c.protocol.tol.rel = o.rel_tol;
    c.protocol.tol.abs = o.abs_tol;
    c.protocol.seed = o.seed;
    c.protocol.stop_at_bound = !o.no_bound_stop;
    c.dla_cap = o.cap;
    c.workers = o.workers > 0 ? o.workers : dqfim::default_workers();
    if (!o.output.empty()) {
        c.output_dir = o.output;
    } else if (const char *env = std::getenv("DQFIM_OUTPUT_DIR"); env && *env) {
        c.output_dir = env;
    }
    c.record_wall_time = o.wall_time;
    return c;
}

void write_resolved_config(const std::string &command, const ExperimentConfig &c) {
    nlohmann::json j = {
        {"schema_version", dqfim::kSchemaVersion},
        {"command", command},
        {"experiment_id", c.experiment_id},
        {"family", dqfim::family_name(c.family)},
        {"n", c.n_qubits},
        {"g", c.g_grid},
        {"l", c.l_grid},
        {"lmax", c.l_max},
        {"ensemble", c.ensemble.str()},
        {"test_ensemble", c.test_spec().str()},
        {"reps", c.reps},
        {"seed", c.master_seed},
        {"target_g", c.resolved_target_g()},
        {"theta0_from_target", c.theta0_from_target},
        {"preset", c.preset},
        {"optimizer", dqfim::optimizer_name(c.train.optimizer)},
        {"lr", c.train.learning_rate},
        {"max_steps", c.train.max_steps},
        {"threshold", c.train.convergence_threshold},
        {"stop_threshold", c.train.stop_threshold},
        {"n_test", c.train.n_test},
        {"n_theta", c.protocol.n_theta},
        {"n_data", c.protocol.n_data},
        {"window", c.protocol.plateau_window},
        {"g_max", c.protocol.g_max},
        {"rel_tol", c.protocol.tol.rel},
        {"abs_tol", c.protocol.tol.abs},
        {"bound_stop", c.protocol.stop_at_bound},
        {"cap", c.dla_cap},
        {"workers", c.workers},
        {"output", c.output_dir.string()},
    };
    std::filesystem::create_directories(c.output_dir);
    std::ofstream(c.output_dir / (command + "_config.json")) << j.dump(2) << '\n';
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Data quantum Fisher information experiments"};
    app.set_config("--config", "", "Flat key = value file with option defaults");
    app.require_subcommand(1);
    app.fallthrough();

    RawOptions o;
    app.add_option("--id", o.id, "Experiment id written to every row");
    app.add_option("--family", o.family, "he, xy, xy_open, xxz, y_cz or z_toy");
    app.add_option("--n", o.n, "Number of qubits");
    app.add_option("--g", o.g, "Layer counts, e.g. 1,2,4 or 1:10");
    app.add_option("--l", o.l, "Training-set sizes, e.g. 0,1,2 or 1:8");
    app.add_option("--lmax", o.l_max, "Largest L for rank analyses");
    app.add_option("--ensemble", o.ensemble, "haar, product, basis or sector:p");
    app.add_option("--test-ensemble", o.test_ensemble, "Test ensemble (defaults to --ensemble)");
    app.add_option("--reps", o.reps, "Repetitions per cell");
    app.add_option("--seed", o.seed, "Master seed");
    app.add_option("--target-g", o.target_g, "Target depth (0: largest G)");
    app.add_flag("--theta0-from-target", o.theta0_from_target, "Start training at the target parameters");
    app.add_option("--preset", o.preset, "Optimizer preset: polish, loose or quick");
    app.add_option("--optimizer", o.optimizer, "bfgs, adam or gd");
    app.add_option("--lr", o.lr, "Learning rate for adam and gd");
    app.add_option("--max-steps", o.max_steps, "Optimizer step budget");
    app.add_option("--threshold", o.threshold, "C_train value that defines convergence and E");
    app.add_option("--stop-threshold", o.stop_threshold, "C_train value at which training stops (0: at convergence)");
    app.add_option("--n-test", o.n_test, "Test states per evaluation");
    app.add_option("--n-theta", o.n_theta, "Parameter draws per depth");
    app.add_option("--n-data", o.n_data, "Dataset redraws per L");
    app.add_option("--window", o.window, "Depth increments without rank change that count as a plateau");
    app.add_option("--g-max", o.g_max, "Largest depth of a rank scan");
    app.add_option("--rel-tol", o.rel_tol, "Relative eigenvalue cutoff");
    app.add_option("--abs-tol", o.abs_tol, "Absolute eigenvalue cutoff");
    app.add_flag("--no-bound-stop", o.no_bound_stop, "Keep scanning after the rank reaches the unitary bound");
    app.add_option("--cap", o.cap, "Largest Lie closure dimension");
    app.add_option("--workers", o.workers, "Worker threads (default: DQFIM_WORKERS or core count)");
    app.add_option("--output", o.output, "Output directory (default: DQFIM_OUTPUT_DIR or ./out)");
    app.add_flag("--wall-time", o.wall_time, "Record per-cell wall time (breaks byte-identical reruns)");

    auto *rank = app.add_subcommand("rank", "Effective-dimension saturation analysis");
    auto *dla = app.add_subcommand("dla", "Dynamical Lie algebra dimension");
    auto *train = app.add_subcommand("train", "Train one configuration over --reps seeds");
    auto *sweep = app.add_subcommand("sweep", "(M, L, seed) phase-diagram sweep with boundary overlay");
    auto *bound = app.add_subcommand("bound", "Print the unitary rank bound for dimension d and L states");
    bound->add_option("--d", o.bound_d, "Hilbert-space dimension")->required();
    bound->add_option("--L", o.bound_l, "Number of states")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? dqfim::kExitOk : dqfim::kExitConfig;
    }

    try {
        if (*bound) {
            if (o.bound_d < 1 || o.bound_l < 0) {
                throw ConfigError("bound needs d >= 1 and L >= 0");
            }
            return dqfim::cmd_bound(o.bound_d, o.bound_l, std::cout);
        }
        ExperimentConfig config = resolve(o);
        config.validate();
        std::string name = rank->parsed() ? "rank" : dla->parsed() ? "dla" : train->parsed() ? "train" : "sweep";
        write_resolved_config(name, config);
        if (*rank) return dqfim::cmd_rank(config, std::cout, std::cerr);
        if (*dla) return dqfim::cmd_dla(config, std::cout, std::cerr);
        if (*train) return dqfim::cmd_train(config, std::cout, std::cerr);
        if (*sweep) return dqfim::cmd_sweep(config, std::cout, std::cerr);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return dqfim::kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return dqfim::kExitConfig;
    }
    return dqfim::kExitConfig;
}
