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

#include "dqfim/experiment.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

namespace dqfim {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string &name) {
    fs::path p = fs::temp_directory_path() / ("dqfim_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

ExperimentConfig small_sweep() {
    ExperimentConfig c;
    c.experiment_id = "t";
    c.family = Family::HE;
    c.n_qubits = 2;
    c.g_grid = {4, 2};
    c.l_grid = {2, 0, 1};
    c.reps = 2;
    c.master_seed = 42;
    c.train = train_preset("quick");
    c.train.max_steps = 200;
    c.train.n_test = 20;
    c.protocol.n_theta = 2;
    c.protocol.n_data = 1;
    c.protocol.g_max = 40;
    return c;
}

TEST(CsvTest, RoundTrip) {
    ResultRow r;
    r.experiment_id = "exp";
    r.family = "xy";
    r.N = 8;
    r.M = 112;
    r.G = 14;
    r.L = 3;
    r.seed = 18446744073709551615ULL;
    r.C_train = 1.0 / 3.0;
    r.C_test = 2.5e-17;
    r.E = 12;
    r.converged = false;
    r.R_L = 14;
    r.L_c_approx = 9.0;
    r.spectral_gap = 1e30;
    std::string line = to_csv(r);
    ResultRow back = parse_csv_row(line);
    EXPECT_EQ(to_csv(back), line);
    EXPECT_EQ(back.C_train, r.C_train);
    EXPECT_EQ(back.seed, r.seed);
    EXPECT_FALSE(back.wall_time.has_value());
    EXPECT_EQ(back.converged, false);
    const std::string header = csv_header();
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), std::count(header.begin(), header.end(), ','));
    EXPECT_EQ(csv_header().rfind("schema_version,experiment_id,family,N,M,G,L,seed,C_train,C_test,E,converged", 0),
              0u);
}

TEST(CsvTest, RejectsUnknownSchemaAndMalformedRows) {
    ResultRow r;
    std::string line = to_csv(r);
    EXPECT_THROW(parse_csv_row("2" + line.substr(1)), std::invalid_argument);
    EXPECT_THROW(parse_csv_row(""), std::invalid_argument);
    EXPECT_THROW(parse_csv_row("1,a,b"), std::invalid_argument);
}

TEST(CsvTest, NonFiniteValuesAreWrittenEmpty) {
    ResultRow r;
    r.spectral_gap = std::numeric_limits<double>::infinity();
    EXPECT_FALSE(parse_csv_row(to_csv(r)).spectral_gap.has_value());
}

TEST(ConfigTest, IntLists) {
    EXPECT_EQ(parse_int_list("1,2,4"), (std::vector<int>{1, 2, 4}));
    EXPECT_EQ(parse_int_list("1:4,8"), (std::vector<int>{1, 2, 3, 4, 8}));
    EXPECT_TRUE(parse_int_list("").empty());
    EXPECT_THROW(parse_int_list("1,x"), ConfigError);
    EXPECT_THROW(parse_int_list("5:2"), ConfigError);
    EXPECT_THROW(parse_int_list("2.5"), ConfigError);
}

TEST(ConfigTest, Validation) {
    ExperimentConfig c = small_sweep();
    EXPECT_NO_THROW(c.validate());
    c.l_grid.clear();
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_sweep();
    c.reps = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_sweep();
    c.ensemble = {EnsembleSpec::Kind::SYMMETRIC_SECTOR, 3};
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_sweep();
    c.family = Family::XY_PERIODIC;
    c.n_qubits = 1;
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_sweep();
    c.theta0_from_target = true;
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_EQ(small_sweep().resolved_target_g(), 4);
    EXPECT_THROW(train_preset("nope"), ConfigError);
}

TEST(SweepTest, RowsAreSortedAndComplete) {
    auto rows = run_sweep_rows(small_sweep());
    ASSERT_EQ(rows.size(), 2u * 3u * 2u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        auto key = [](const ResultRow &r) { return std::tuple(r.M, r.L, r.seed); };
        EXPECT_LT(key(rows[i - 1]), key(rows[i]));
    }
    for (const auto &r : rows) {
        EXPECT_FALSE(r.status.starts_with("error")) << r.status;
        ASSERT_TRUE(r.C_test.has_value());
        if (r.L == 0) {
            EXPECT_FALSE(r.C_train.has_value());
        } else {
            EXPECT_TRUE(r.E.has_value());
        }
    }
}

TEST(SweepTest, ByteIdenticalAcrossRerunsAndWorkerCounts) {
    std::ostringstream out;
    std::ostringstream err;
    ExperimentConfig a = small_sweep();
    a.output_dir = scratch_dir("sweep_a");
    ExperimentConfig b = a;
    b.output_dir = scratch_dir("sweep_b");
    b.workers = 4;
    ExperimentConfig c = a;
    c.output_dir = scratch_dir("sweep_c");
    ASSERT_EQ(cmd_sweep(a, out, err), kExitOk);
    ASSERT_EQ(cmd_sweep(b, out, err), kExitOk);
    ASSERT_EQ(cmd_sweep(c, out, err), kExitOk);
    std::string sa = slurp(a.output_dir / "sweep.csv");
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, slurp(b.output_dir / "sweep.csv"));
    EXPECT_EQ(sa, slurp(c.output_dir / "sweep.csv"));

    auto overlay = nlohmann::json::parse(slurp(a.output_dir / "boundary.json"));
    auto prof = compute_saturation_profile(a.family, a.n_qubits, a.ensemble, 2, a.protocol);
    EXPECT_EQ(overlay["L_c"].get<int>(), prof.L_c);
    EXPECT_EQ(overlay["records"][1]["M_c"].get<int>(), prof.M_c(2));
    EXPECT_EQ(overlay["records"][0]["R_L"].get<int>(), 6);
}

TEST(CommandTest, DlaWritesRecordAndFlagsTruncation) {
    std::ostringstream out;
    std::ostringstream err;
    ExperimentConfig c;
    c.n_qubits = 2;
    c.output_dir = scratch_dir("dla");
    EXPECT_EQ(cmd_dla(c, out, err), kExitOk);
    auto j = nlohmann::json::parse(slurp(c.output_dir / "dla.json"));
    EXPECT_EQ(j["dim"].get<int>(), 15);
    EXPECT_FALSE(j["truncated"].get<bool>());
    c.n_qubits = 3;
    c.dla_cap = 10;
    EXPECT_EQ(cmd_dla(c, out, err), kExitTruncated);
    EXPECT_TRUE(nlohmann::json::parse(slurp(c.output_dir / "dla.json"))["truncated"].get<bool>());
}

TEST(CommandTest, RankWritesRowsAndSummary) {
    std::ostringstream out;
    std::ostringstream err;
    ExperimentConfig c = small_sweep();
    c.l_max = 5;
    c.output_dir = scratch_dir("rank");
    EXPECT_EQ(cmd_rank(c, out, err), kExitOk);
    auto j = nlohmann::json::parse(slurp(c.output_dir / "rank_summary.json"));
    EXPECT_EQ(j["R_1"].get<int>(), 6);
    EXPECT_EQ(j["R_inf"].get<int>(), 15);
    EXPECT_EQ(j["L_c"].get<int>(), 4);
    std::ifstream f(c.output_dir / "rank.csv");
    std::string line;
    std::getline(f, line);
    EXPECT_EQ(line, csv_header());
    int rows = 0;
    while (std::getline(f, line)) {
        ResultRow r = parse_csv_row(line);
        EXPECT_TRUE(r.D_L.has_value());
        EXPECT_LE(*r.D_L, *r.R_L);
        ++rows;
    }
    EXPECT_GT(rows, 0);

    c.l_max = 2;
    EXPECT_EQ(cmd_rank(c, out, err), kExitNoPlateau);
}

TEST(CommandTest, TrainFromTargetConvergesAtStepZero) {
    std::ostringstream out;
    std::ostringstream err;
    ExperimentConfig c = small_sweep();
    c.g_grid = {3};
    c.l_grid = {2};
    c.theta0_from_target = true;
    c.output_dir = scratch_dir("train");
    EXPECT_EQ(cmd_train(c, out, err), kExitOk);
    auto rows = run_sweep_rows(c);
    for (const auto &r : rows) {
        EXPECT_EQ(r.E, 0);
        EXPECT_EQ(r.converged, true);
    }
    EXPECT_TRUE(fs::exists(c.output_dir / "train.csv"));
}

TEST(CommandTest, InvalidConfigWritesNothing) {
    std::ostringstream out;
    std::ostringstream err;
    ExperimentConfig c = small_sweep();
    c.l_grid.clear();
    c.output_dir = scratch_dir("invalid");
    EXPECT_THROW(cmd_sweep(c, out, err), ConfigError);
    EXPECT_FALSE(fs::exists(c.output_dir));
}

TEST(CommandTest, Bound) {
    std::ostringstream out;
    EXPECT_EQ(cmd_bound(4, 2, out), kExitOk);
    EXPECT_EQ(out.str(), "11\n");
}

} // namespace
} // namespace dqfim
