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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dqfim/ansatz.h"
#include "dqfim/ensemble.h"
#include "dqfim/saturation.h"
#include "dqfim/trainer.h"

namespace dqfim {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitNoPlateau = 2,
    kExitTruncated = 3,
    kExitPartialSweep = 4,
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One output row. Optional fields that do not apply to a run are written as
/// empty CSV cells.
struct ResultRow {
    std::string experiment_id;
    std::string family;
    int N = 0;
    int M = 0;
    int G = 0;
    int L = 0;
    std::uint64_t seed = 0;
    std::optional<double> C_train;
    std::optional<double> C_test;
    std::optional<int> E;
    std::optional<bool> converged;
    std::optional<double> empirical_risk;
    std::optional<double> wall_time;
    std::optional<int> D_L;
    std::optional<int> R_L;
    std::optional<int> M_c;
    std::optional<int> R_inf;
    std::optional<int> L_c;
    std::optional<double> L_c_approx;
    std::optional<int> dla_dim;
    std::optional<double> spectral_gap;
    std::string status = "ok";
};

std::string csv_header();
std::string to_csv(const ResultRow &row);
/// Parses a line written by to_csv. Throws std::invalid_argument on an unknown
/// schema version or a malformed line.
ResultRow parse_csv_row(std::string_view line);

/// Named optimizer settings. "polish": BFGS, E counted at C_train < 1e-4, training
/// continues to 1e-8; "loose": the same with E at 1e-3; "quick": stops at 1e-4.
TrainConfig train_preset(std::string_view name);

struct ExperimentConfig {
    std::string experiment_id;
    Family family = Family::HE;
    int n_qubits = 4;
    std::vector<int> g_grid{1};
    std::vector<int> l_grid{1};
    int l_max = 1;
    EnsembleSpec ensemble;
    /// Defaults to `ensemble` when unset.
    std::optional<EnsembleSpec> test_ensemble;
    int reps = 1;
    std::uint64_t master_seed = 1;
    /// 0 means the largest G in g_grid.
    int target_g = 0;
    bool theta0_from_target = false;
    TrainConfig train;
    std::string preset = "polish";
    RankProtocol protocol;
    int dla_cap = 100000;
    int workers = 1;
    std::filesystem::path output_dir = "out";
    bool record_wall_time = false;

    /// Throws ConfigError on empty grids, bad sizes or inconsistent values.
    void validate() const;
    const EnsembleSpec &test_spec() const { return test_ensemble ? *test_ensemble : ensemble; }
    int resolved_target_g() const;
};

/// Training rows of an (M, L, rep) grid, sorted by (M, L, seed). Cells with
/// L = 0 are untrained baselines: the test cost of the initial parameters.
/// Seeds derive from the master seed and the cell index only, so the rows do
/// not depend on the worker count.
std::vector<ResultRow> run_sweep_rows(const ExperimentConfig &config);

/// Depth-scan rows (one per L, G and parameter draw) and the profile.
struct RankRun {
    std::vector<ResultRow> rows;
    std::optional<SaturationProfile> profile;
    /// Set when the scan did not plateau.
    std::string error;
};
RankRun run_rank_rows(const ExperimentConfig &config);

// Subcommands. Each validates the config before touching the file system,
// writes its outputs under config.output_dir and returns an ExitCode.
int cmd_rank(const ExperimentConfig &config, std::ostream &out, std::ostream &err);
int cmd_dla(const ExperimentConfig &config, std::ostream &out, std::ostream &err);
int cmd_train(const ExperimentConfig &config, std::ostream &out, std::ostream &err);
int cmd_sweep(const ExperimentConfig &config, std::ostream &out, std::ostream &err);
int cmd_bound(std::int64_t d, std::int64_t L, std::ostream &out);

void write_csv(const std::filesystem::path &path, const std::vector<ResultRow> &rows);

/// Parses "1,2,4" and "1:5" (inclusive range) lists of positive integers.
std::vector<int> parse_int_list(std::string_view text);

} // namespace dqfim
