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

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dqfim/dqfim.h"
#include "dqfim/lie_closure.h"
#include "dqfim/parallel.h"

namespace dqfim {

namespace {

using json = nlohmann::json;

// Seed-path tags keep the independent streams of one repetition apart.
constexpr std::uint64_t kTargetTag = 0x7a1;
constexpr std::uint64_t kDataTag = 0xda7a;
constexpr std::uint64_t kTestTag = 0x7e57;
constexpr std::uint64_t kInitTag = 0x1417;

const std::vector<std::string> &columns() {
    static const std::vector<std::string> cols = {
        "schema_version", "experiment_id", "family", "N",    "M",   "G",     "L",          "seed",
        "C_train",        "C_test",        "E",      "converged", "empirical_risk", "wall_time", "D_L",
        "R_L",            "M_c",           "R_inf",  "L_c",  "L_c_approx", "dla_dim", "spectral_gap", "status"};
    return cols;
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_str(const std::optional<double> &v) {
    return v && std::isfinite(*v) ? fmt_double(*v) : std::string();
}
std::string opt_str(const std::optional<int> &v) { return v ? std::to_string(*v) : std::string(); }
std::string opt_str(const std::optional<bool> &v) { return v ? (*v ? "true" : "false") : std::string(); }

/// CSV cells never contain separators or line breaks.
std::string sanitize(std::string s) {
    for (char &c : s) {
        if (c == ',' || c == '\n' || c == '\r' || c == '"') {
            c = ';';
        }
    }
    return s;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_opt_double(const std::string &s) {
    if (s.empty()) {
        return std::nullopt;
    }
    return std::stod(s);
}
std::optional<int> parse_opt_int(const std::string &s) {
    if (s.empty()) {
        return std::nullopt;
    }
    return std::stoi(s);
}
std::optional<bool> parse_opt_bool(const std::string &s) {
    if (s.empty()) {
        return std::nullopt;
    }
    if (s == "true") return true;
    if (s == "false") return false;
    throw std::invalid_argument("bad boolean cell '" + s + "'");
}

std::filesystem::path prepare_dir(const ExperimentConfig &config) {
    std::filesystem::create_directories(config.output_dir);
    return config.output_dir;
}

void write_json(const std::filesystem::path &path, const json &j) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    f << j.dump(2) << '\n';
}

TrainingSet prefix(const TrainingSet &set, int L) {
    TrainingSet out;
    out.spec = set.spec;
    out.seed = set.seed;
    out.inputs.assign(set.inputs.begin(), set.inputs.begin() + L);
    out.targets.assign(set.targets.begin(), set.targets.begin() + L);
    return out;
}

json profile_json(const ExperimentConfig &config, const SaturationProfile &prof) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["family"] = family_name(config.family);
    j["N"] = config.n_qubits;
    j["ensemble"] = config.ensemble.str();
    json recs = json::array();
    for (const auto &r : prof.records) {
        recs.push_back({{"L", r.L}, {"R_L", r.R_L}, {"M_c", r.M_c}, {"per_draw", r.per_draw}});
    }
    j["records"] = recs;
    j["R_1"] = prof.records.empty() ? 0 : prof.records[0].R_L;
    j["R_inf"] = prof.R_inf;
    j["L_c"] = prof.L_c;
    j["L_c_approx"] = prof.L_c_approx;
    j["plateau"] = prof.l_plateau;
    j["protocol"] = {{"n_theta", prof.protocol.n_theta},
                     {"plateau_window", prof.protocol.plateau_window},
                     {"n_data", prof.protocol.n_data},
                     {"g_max", prof.protocol.g_max},
                     {"rel_tol", prof.protocol.tol.rel},
                     {"abs_tol", prof.protocol.tol.abs},
                     {"seed", prof.protocol.seed}};
    return j;
}

RankProtocol protocol_for(const ExperimentConfig &config) {
    RankProtocol p = config.protocol;
    p.workers = config.workers;
    return p;
}

} // namespace

std::string csv_header() {
    std::string out;
    for (const auto &c : columns()) {
        if (!out.empty()) {
            out += ',';
        }
        out += c;
    }
    return out;
}

std::string to_csv(const ResultRow &r) {
    std::vector<std::string> cells = {std::to_string(kSchemaVersion),
                                      sanitize(r.experiment_id),
                                      sanitize(r.family),
                                      std::to_string(r.N),
                                      std::to_string(r.M),
                                      std::to_string(r.G),
                                      std::to_string(r.L),
                                      std::to_string(r.seed),
                                      opt_str(r.C_train),
                                      opt_str(r.C_test),
                                      opt_str(r.E),
                                      opt_str(r.converged),
                                      opt_str(r.empirical_risk),
                                      opt_str(r.wall_time),
                                      opt_str(r.D_L),
                                      opt_str(r.R_L),
                                      opt_str(r.M_c),
                                      opt_str(r.R_inf),
                                      opt_str(r.L_c),
                                      opt_str(r.L_c_approx),
                                      opt_str(r.dla_dim),
                                      opt_str(r.spectral_gap),
                                      sanitize(r.status)};
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += cells[i];
    }
    return out;
}

ResultRow parse_csv_row(std::string_view line) {
    auto cells = split(line, ',');
    if (cells.empty() || cells[0].empty()) {
        throw std::invalid_argument("empty CSV row");
    }
    int version = std::stoi(cells[0]);
    if (version != kSchemaVersion) {
        throw std::invalid_argument("unsupported schema_version " + cells[0]);
    }
    if (cells.size() != columns().size()) {
        throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                                    std::to_string(columns().size()));
    }
    ResultRow r;
    r.experiment_id = cells[1];
    r.family = cells[2];
    r.N = std::stoi(cells[3]);
    r.M = std::stoi(cells[4]);
    r.G = std::stoi(cells[5]);
    r.L = std::stoi(cells[6]);
    r.seed = std::stoull(cells[7]);
    r.C_train = parse_opt_double(cells[8]);
    r.C_test = parse_opt_double(cells[9]);
    r.E = parse_opt_int(cells[10]);
    r.converged = parse_opt_bool(cells[11]);
    r.empirical_risk = parse_opt_double(cells[12]);
    r.wall_time = parse_opt_double(cells[13]);
    r.D_L = parse_opt_int(cells[14]);
    r.R_L = parse_opt_int(cells[15]);
    r.M_c = parse_opt_int(cells[16]);
    r.R_inf = parse_opt_int(cells[17]);
    r.L_c = parse_opt_int(cells[18]);
    r.L_c_approx = parse_opt_double(cells[19]);
    r.dla_dim = parse_opt_int(cells[20]);
    r.spectral_gap = parse_opt_double(cells[21]);
    r.status = cells[22];
    return r;
}

void write_csv(const std::filesystem::path &path, const std::vector<ResultRow> &rows) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    f << csv_header() << '\n';
    for (const auto &r : rows) {
        f << to_csv(r) << '\n';
    }
}

TrainConfig train_preset(std::string_view name) {
    TrainConfig c;
    c.optimizer = Optimizer::BFGS;
    c.max_steps = 3000;
    if (name == "polish") {
        c.convergence_threshold = 1e-4;
        c.stop_threshold = 1e-8;
    } else if (name == "loose") {
        c.convergence_threshold = 1e-3;
        c.stop_threshold = 1e-8;
    } else if (name == "quick") {
        c.convergence_threshold = 1e-4;
        c.stop_threshold = 0.0;
    } else {
        throw ConfigError("unknown optimizer preset '" + std::string(name) + "' (expected polish, loose or quick)");
    }
    return c;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    for (const auto &part : split(text, ',')) {
        if (part.empty()) {
            continue;
        }
        try {
            if (auto colon = part.find(':'); colon != std::string::npos) {
                int lo = std::stoi(part.substr(0, colon));
                int hi = std::stoi(part.substr(colon + 1));
                if (hi < lo) {
                    throw ConfigError("empty range '" + part + "'");
                }
                for (int v = lo; v <= hi; ++v) {
                    out.push_back(v);
                }
            } else {
                std::size_t used = 0;
                out.push_back(std::stoi(part, &used));
                if (used != part.size()) {
                    throw ConfigError("bad integer '" + part + "'");
                }
            }
        } catch (const std::logic_error &) {
            throw ConfigError("bad integer list '" + std::string(text) + "'");
        }
    }
    return out;
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string &msg) { throw ConfigError(msg); };
    if (family == Family::CUSTOM) {
        fail("custom ansatz family is not available from the command line");
    }
    try {
        Ansatz::build(family, n_qubits, 1);
        ensemble.validate(n_qubits);
        test_spec().validate(n_qubits);
    } catch (const std::exception &e) {
        fail(e.what());
    }
    if (n_qubits > 16) {
        fail("n_qubits above 16 is outside the supported range");
    }
    if (g_grid.empty()) fail("G grid is empty");
    if (l_grid.empty()) fail("L grid is empty");
    for (int g : g_grid) {
        if (g < 1) fail("G values must be >= 1");
    }
    for (int l : l_grid) {
        if (l < 0) fail("L values must be >= 0");
    }
    if (l_max < 1) fail("l_max must be >= 1");
    if (reps < 1) fail("reps must be >= 1");
    if (workers < 1) fail("workers must be >= 1");
    if (target_g < 0) fail("target_g must be >= 0");
    if (dla_cap < 1) fail("dla cap must be >= 1");
    if (train.max_steps < 1) fail("max_steps must be >= 1");
    if (!(train.convergence_threshold > 0) || !(train.gradient_threshold > 0)) fail("thresholds must be positive");
    if (train.n_test < 1) fail("n_test must be >= 1");
    if (protocol.n_theta < 1 || protocol.plateau_window < 1 || protocol.n_data < 1 || protocol.g_max < 1) {
        fail("rank protocol values must be >= 1");
    }
    if (!(protocol.tol.rel > 0) || !(protocol.tol.abs > 0)) fail("rank tolerances must be positive");
    if (theta0_from_target) {
        for (int g : g_grid) {
            if (g != resolved_target_g()) {
                fail("--theta0-from-target needs the trainee depth to equal the target depth");
            }
        }
    }
    train_preset(preset);
}

int ExperimentConfig::resolved_target_g() const {
    return target_g > 0 ? target_g : *std::max_element(g_grid.begin(), g_grid.end());
}

std::vector<ResultRow> run_sweep_rows(const ExperimentConfig &config) {
    config.validate();
    std::vector<int> gs(config.g_grid);
    std::sort(gs.begin(), gs.end());
    gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
    std::vector<int> ls(config.l_grid);
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    const int l_top = ls.back();

    const Ansatz target = Ansatz::build(config.family, config.n_qubits, config.resolved_target_g());
    struct RepData {
        ParameterVector theta_g;
        TrainingSet set;
        std::uint64_t test_seed;
    };
    std::vector<RepData> reps;
    for (int r = 0; r < config.reps; ++r) {
        auto ur = static_cast<std::uint64_t>(r);
        Rng rng(derive_seed(config.master_seed, {kTargetTag, ur}));
        RepData d;
        d.theta_g = random_parameters(target, rng);
        if (l_top > 0) {
            d.set = build_training_set(target, d.theta_g, config.ensemble, l_top,
                                       derive_seed(config.master_seed, {kDataTag, ur}));
        }
        d.test_seed = derive_seed(config.master_seed, {kTestTag, ur});
        reps.push_back(std::move(d));
    }

    const std::size_t n_cells = gs.size() * ls.size() * static_cast<std::size_t>(config.reps);
    std::vector<ResultRow> rows(n_cells);
    parallel_for(n_cells, config.workers, [&](std::size_t cell) {
        const std::size_t per_g = ls.size() * static_cast<std::size_t>(config.reps);
        const int G = gs[cell / per_g];
        const int L = ls[(cell % per_g) / static_cast<std::size_t>(config.reps)];
        const int rep = static_cast<int>(cell % static_cast<std::size_t>(config.reps));
        const RepData &data = reps[static_cast<std::size_t>(rep)];
        const Ansatz ansatz = Ansatz::build(config.family, config.n_qubits, G);

        ResultRow row;
        row.experiment_id = config.experiment_id;
        row.family = family_name(config.family);
        row.N = config.n_qubits;
        row.M = ansatz.n_params();
        row.G = G;
        row.L = L;
        row.seed = static_cast<std::uint64_t>(rep);
        auto t0 = std::chrono::steady_clock::now();
        try {
            ParameterVector theta0;
            if (config.theta0_from_target) {
                theta0 = data.theta_g;
            } else {
                Rng init(derive_seed(config.master_seed, {kInitTag, static_cast<std::uint64_t>(cell)}));
                theta0 = random_parameters(ansatz, init);
            }
            if (L == 0) {
                Rng test_rng(data.test_seed);
                TestCost tc = cost_test(ansatz, theta0, target, data.theta_g, config.test_spec(), config.train.n_test,
                                        test_rng);
                row.C_test = tc.value;
            } else {
                TrainConfig tc = config.train;
                tc.test_seed = data.test_seed;
                TrainResult res =
                    train(ansatz, theta0, prefix(data.set, L), target, data.theta_g, config.test_spec(), tc);
                row.C_train = res.c_train_final;
                row.C_test = res.c_test_final;
                row.E = res.steps_E;
                row.converged = res.converged;
                row.empirical_risk = res.empirical_risk;
                row.status = status_name(res.status);
            }
        } catch (const std::exception &e) {
            row.status = std::string("error: ") + e.what();
        }
        if (config.record_wall_time) {
            row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        rows[cell] = std::move(row);
    });
    // Cells were laid out G-major, which is already (M, L, seed) order.
    return rows;
}

RankRun run_rank_rows(const ExperimentConfig &config) {
    config.validate();
    RankRun run;
    RankProtocol protocol = protocol_for(config);
    try {
        run.profile = compute_saturation_profile(config.family, config.n_qubits, config.ensemble, config.l_max, protocol);
    } catch (const NoPlateauError &e) {
        run.error = e.what();
        return run;
    }
    const SaturationProfile &prof = *run.profile;
    if (!prof.l_plateau) {
        run.error = "R_L still grows at L_max=" + std::to_string(config.l_max);
    }
    const auto n_l = static_cast<std::size_t>(config.l_max);
    for (std::size_t L = 1; L <= n_l; ++L) {
        for (int draw = 0; draw < protocol.n_data; ++draw) {
            const RankEstimate &cell = prof.cells[static_cast<std::size_t>(draw) * n_l + (L - 1)];
            for (const auto &rec : cell.curve) {
                for (std::size_t t = 0; t < rec.per_theta.size(); ++t) {
                    ResultRow row;
                    row.experiment_id = config.experiment_id;
                    row.family = family_name(config.family);
                    row.N = config.n_qubits;
                    row.M = rec.M;
                    row.G = rec.G;
                    row.L = static_cast<int>(L);
                    row.seed = static_cast<std::uint64_t>(draw) * static_cast<std::uint64_t>(protocol.n_theta) + t;
                    row.D_L = rec.per_theta[t];
                    row.R_L = prof.R(static_cast<int>(L));
                    row.M_c = prof.M_c(static_cast<int>(L));
                    row.R_inf = prof.R_inf;
                    row.L_c = prof.L_c;
                    row.L_c_approx = prof.L_c_approx;
                    row.spectral_gap = rec.spectral_gap;
                    row.status = prof.l_plateau ? "ok" : "no_plateau";
                    run.rows.push_back(std::move(row));
                }
            }
        }
    }
    return run;
}

int cmd_rank(const ExperimentConfig &config, std::ostream &out, std::ostream &err) {
    config.validate();
    RankRun run = run_rank_rows(config);
    auto dir = prepare_dir(config);
    write_csv(dir / "rank.csv", run.rows);
    json summary;
    if (run.profile) {
        summary = profile_json(config, *run.profile);
        double gap = std::numeric_limits<double>::infinity();
        for (const auto &r : run.profile->records) {
            gap = std::min(gap, r.spectral_gap);
        }
        if (gap < 1e3) {
            err << "warning: smallest spectral gap " << gap << " is below 1e3; rank values may be fragile\n";
        }
    } else {
        summary = {{"schema_version", kSchemaVersion}, {"family", family_name(config.family)}, {"N", config.n_qubits}};
    }
    if (!run.error.empty()) {
        summary["error"] = run.error;
    }
    write_json(dir / "rank_summary.json", summary);
    out << summary.dump(2) << '\n';
    if (!run.error.empty()) {
        err << "no plateau: " << run.error << '\n';
        return kExitNoPlateau;
    }
    return kExitOk;
}

int cmd_dla(const ExperimentConfig &config, std::ostream &out, std::ostream &) {
    config.validate();
    Ansatz ansatz = Ansatz::build(config.family, config.n_qubits, 1);
    OperatorSpan span = lie_closure(generator_set(ansatz), config.dla_cap);
    json j = {{"schema_version", kSchemaVersion},
              {"family", family_name(config.family)},
              {"N", config.n_qubits},
              {"dim", span.dim()},
              {"truncated", span.truncated}};
    auto dir = prepare_dir(config);
    write_json(dir / "dla.json", j);
    out << j.dump() << '\n';
    return span.truncated ? kExitTruncated : kExitOk;
}

int cmd_train(const ExperimentConfig &config, std::ostream &out, std::ostream &err) {
    config.validate();
    auto rows = run_sweep_rows(config);
    auto dir = prepare_dir(config);
    write_csv(dir / "train.csv", rows);
    out << csv_header() << '\n';
    bool failed = false;
    for (const auto &r : rows) {
        out << to_csv(r) << '\n';
        if (r.status.starts_with("error")) {
            failed = true;
            err << r.status << '\n';
        }
    }
    return failed ? kExitPartialSweep : kExitOk;
}

int cmd_sweep(const ExperimentConfig &config, std::ostream &out, std::ostream &err) {
    config.validate();
    int l_top = *std::max_element(config.l_grid.begin(), config.l_grid.end());
    json overlay;
    try {
        SaturationProfile prof = compute_saturation_profile(config.family, config.n_qubits, config.ensemble,
                                                            std::max(1, l_top), protocol_for(config));
        overlay = profile_json(config, prof);
    } catch (const NoPlateauError &e) {
        overlay = {{"schema_version", kSchemaVersion}, {"error", e.what()}};
    }
    auto rows = run_sweep_rows(config);
    auto dir = prepare_dir(config);
    write_csv(dir / "sweep.csv", rows);
    write_json(dir / "boundary.json", overlay);
    std::size_t ok = 0;
    for (const auto &r : rows) {
        if (!r.status.starts_with("error")) {
            ++ok;
        }
    }
    out << "sweep: " << ok << "/" << rows.size() << " cells succeeded; wrote " << (dir / "sweep.csv").string()
        << " and " << (dir / "boundary.json").string() << '\n';
    if (static_cast<double>(ok) < 0.95 * static_cast<double>(rows.size())) {
        err << "sweep: fewer than 95% of cells succeeded\n";
        return kExitPartialSweep;
    }
    return kExitOk;
}

int cmd_bound(std::int64_t d, std::int64_t L, std::ostream &out) {
    out << unitary_bound(d, L) << '\n';
    return kExitOk;
}

} // namespace dqfim
