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

#include <algorithm>
#include <cmath>
#include <limits>

#include "dqfim/parallel.h"

namespace dqfim {

std::vector<int> depth_schedule(int g_max) {
    std::vector<int> out;
    int g = 1;
    while (g <= g_max) {
        out.push_back(g);
        g = g < 12 ? g + 1 : static_cast<int>(std::lround(1.5 * g));
    }
    return out;
}

RankEstimate estimate_rank_for_projector(Family family, int n_qubits, const DataProjector &proj,
                                         const RankProtocol &protocol, std::uint64_t seed) {
    if (protocol.n_theta < 1 || protocol.plateau_window < 1) {
        throw std::invalid_argument("rank protocol needs n_theta >= 1 and plateau_window >= 1");
    }
    const auto d = static_cast<std::int64_t>(std::int64_t{1} << n_qubits);
    const std::int64_t bound = unitary_bound(d, proj.rank());
    RankEstimate est;
    est.projector_rank = proj.rank();
    int unchanged = 0;
    for (int g : depth_schedule(protocol.g_max)) {
        Ansatz ansatz = Ansatz::build(family, n_qubits, g);
        DepthRecord rec{g, ansatz.n_params(), 0, std::numeric_limits<double>::infinity(), {}};
        for (int t = 0; t < protocol.n_theta; ++t) {
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(t)}));
            ParameterVector theta = random_parameters(ansatz, rng);
            RankResult r = effective_dimension(ansatz, theta, proj, protocol.tol);
            rec.per_theta.push_back(r.rank);
            if (r.rank > rec.D) {
                rec.D = r.rank;
                rec.spectral_gap = r.spectral_gap;
            } else if (r.rank == rec.D) {
                rec.spectral_gap = std::min(rec.spectral_gap, r.spectral_gap);
            }
            if (protocol.stop_at_bound && rec.D >= bound) {
                break;
            }
        }
        bool same = !est.curve.empty() && rec.D == est.curve.back().D;
        unchanged = same ? unchanged + 1 : 0;
        est.curve.push_back(rec);
        bool at_bound = protocol.stop_at_bound && rec.D >= bound;
        if (unchanged >= protocol.plateau_window || at_bound) {
            est.R = rec.D;
            // First depth that reached the plateau value.
            auto first = std::find_if(est.curve.begin(), est.curve.end(), [&](const DepthRecord &c) { return c.D == est.R; });
            est.M_c = first->M;
            est.G_c = first->G;
            est.spectral_gap = std::numeric_limits<double>::infinity();
            for (auto it = first; it != est.curve.end(); ++it) {
                est.spectral_gap = std::min(est.spectral_gap, it->spectral_gap);
            }
            return est;
        }
    }
    throw NoPlateauError(family_name(family) + " N=" + std::to_string(n_qubits) + ": no rank plateau up to G=" +
                             std::to_string(protocol.g_max),
                         est.curve);
}

std::vector<StateVector> nested_states(const EnsembleSpec &spec, int n_qubits, int L, std::uint64_t seed, int draw) {
    Rng rng(derive_seed(seed, {0xda7aULL, static_cast<std::uint64_t>(draw)}));
    std::vector<StateVector> states;
    states.reserve(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) {
        states.push_back(sample_state(spec, n_qubits, rng));
    }
    return states;
}

namespace {

RankEstimate estimate_cell(Family family, int n_qubits, const EnsembleSpec &spec, int L, const RankProtocol &protocol,
                           int draw) {
    auto states = nested_states(spec, n_qubits, L, protocol.seed, draw);
    DataProjector proj = build_projector(states, protocol.projector_tol);
    std::uint64_t seed = derive_seed(protocol.seed, {0x7e7aULL, static_cast<std::uint64_t>(draw), static_cast<std::uint64_t>(L)});
    return estimate_rank_for_projector(family, n_qubits, proj, protocol, seed);
}

} // namespace

RankEstimate estimate_max_rank(Family family, int n_qubits, const EnsembleSpec &spec, int L,
                               const RankProtocol &protocol) {
    if (L < 1) {
        throw std::invalid_argument("estimate_max_rank needs L >= 1");
    }
    spec.validate(n_qubits);
    return estimate_cell(family, n_qubits, spec, L, protocol, 0);
}

int SaturationProfile::R(int L) const {
    for (const auto &r : records) {
        if (r.L == L) {
            return r.R_L;
        }
    }
    throw std::out_of_range("no record for L=" + std::to_string(L));
}

int SaturationProfile::M_c(int L) const {
    for (const auto &r : records) {
        if (r.L == L) {
            return r.M_c;
        }
    }
    throw std::out_of_range("no record for L=" + std::to_string(L));
}

SaturationProfile compute_saturation_profile(Family family, int n_qubits, const EnsembleSpec &spec, int L_max,
                                             const RankProtocol &protocol) {
    if (L_max < 1 || protocol.n_data < 1) {
        throw std::invalid_argument("saturation_profile needs L_max >= 1 and n_data >= 1");
    }
    spec.validate(n_qubits);
    const auto n_l = static_cast<std::size_t>(L_max);
    const auto n_cells = static_cast<std::size_t>(protocol.n_data) * n_l;
    std::vector<RankEstimate> cells(n_cells);
    parallel_for(n_cells, protocol.workers, [&](std::size_t i) {
        int draw = static_cast<int>(i / n_l);
        int L = static_cast<int>(i % n_l) + 1;
        cells[i] = estimate_cell(family, n_qubits, spec, L, protocol, draw);
    });

    SaturationProfile prof;
    prof.protocol = protocol;
    for (int L = 1; L <= L_max; ++L) {
        LRecord rec;
        rec.L = L;
        rec.M_c = std::numeric_limits<int>::max();
        rec.spectral_gap = std::numeric_limits<double>::infinity();
        for (int r = 0; r < protocol.n_data; ++r) {
            const RankEstimate &c = cells[static_cast<std::size_t>(r) * n_l + static_cast<std::size_t>(L - 1)];
            rec.per_draw.push_back(c.R);
            if (c.R > rec.R_L) {
                rec.R_L = c.R;
                rec.M_c = c.M_c;
            } else if (c.R == rec.R_L) {
                rec.M_c = std::min(rec.M_c, c.M_c);
            }
            rec.spectral_gap = std::min(rec.spectral_gap, c.spectral_gap);
        }
        prof.records.push_back(rec);
    }
    prof.cells = std::move(cells);
    for (const auto &r : prof.records) {
        if (r.R_L > prof.R_inf) {
            prof.R_inf = r.R_L;
            prof.L_c = r.L;
        }
    }
    prof.L_c_approx = prof.records[0].R_L > 0 ? 2.0 * prof.R_inf / prof.records[0].R_L : 0.0;
    prof.l_plateau = !(L_max >= 2 && prof.records[n_l - 1].R_L > prof.records[n_l - 2].R_L);
    return prof;
}

SaturationProfile saturation_profile(Family family, int n_qubits, const EnsembleSpec &spec, int L_max,
                                     const RankProtocol &protocol) {
    SaturationProfile prof = compute_saturation_profile(family, n_qubits, spec, L_max, protocol);
    if (!prof.l_plateau) {
        std::vector<int> r_by_l;
        for (const auto &r : prof.records) {
            r_by_l.push_back(r.R_L);
        }
        throw NoPlateauError("R_L still grows at L_max=" + std::to_string(L_max), {}, std::move(r_by_l));
    }
    return prof;
}

} // namespace dqfim
