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
#include <stdexcept>
#include <vector>

#include "dqfim/ansatz.h"
#include "dqfim/dqfim.h"
#include "dqfim/ensemble.h"

namespace dqfim {

struct RankProtocol {
    /// Random parameter draws per depth; the rank kept is the max over draws.
    int n_theta = 5;
    /// Depth increments with unchanged rank that count as a plateau.
    int plateau_window = 3;
    /// Dataset redraws per L; R_L is the max over redraws.
    int n_data = 3;
    int g_max = 400;
    RankTolerance tol;
    double projector_tol = 1e-10;
    std::uint64_t seed = 1;
    int workers = 1;
    /// Stop the depth scan as soon as D reaches the isometry count
    /// unitary_bound(d, B_L), since no deeper circuit can exceed it.
    bool stop_at_bound = true;
};

/// G = 1, 2, ..., 12, then repeated x1.5 (rounded), capped at g_max.
std::vector<int> depth_schedule(int g_max);

struct DepthRecord {
    int G = 0;
    int M = 0;
    int D = 0;
    double spectral_gap = 0.0;
    /// Rank of each parameter draw, in draw order (may stop early at the bound).
    std::vector<int> per_theta;
};

struct RankEstimate {
    int R = 0;
    int M_c = 0;
    int G_c = 0;
    int projector_rank = 0;
    /// Smallest spectral gap among the depths at the plateau.
    double spectral_gap = 0.0;
    std::vector<DepthRecord> curve;
};

class NoPlateauError : public std::runtime_error {
  public:
    NoPlateauError(const std::string &what, std::vector<DepthRecord> curve, std::vector<int> r_by_l = {})
        : std::runtime_error(what), curve_(std::move(curve)), r_by_l_(std::move(r_by_l)) {}
    const std::vector<DepthRecord> &curve() const { return curve_; }
    const std::vector<int> &r_by_l() const { return r_by_l_; }

  private:
    std::vector<DepthRecord> curve_;
    std::vector<int> r_by_l_;
};

/// Depth scan of the effective dimension for a fixed projector.
RankEstimate estimate_rank_for_projector(Family family, int n_qubits, const DataProjector &proj,
                                         const RankProtocol &protocol, std::uint64_t seed);

/// Nested training states for dataset redraw `draw`: the first L states of one
/// seeded stream, so smaller L is always a prefix.
std::vector<StateVector> nested_states(const EnsembleSpec &spec, int n_qubits, int L, std::uint64_t seed, int draw);

/// R_L and M_c(L) from one seeded training sample of size L (redraw 0).
RankEstimate estimate_max_rank(Family family, int n_qubits, const EnsembleSpec &spec, int L,
                               const RankProtocol &protocol);

struct LRecord {
    int L = 0;
    int R_L = 0;
    int M_c = 0;
    /// R_L of each dataset redraw.
    std::vector<int> per_draw;
    double spectral_gap = 0.0;
};

struct SaturationProfile {
    std::vector<LRecord> records;
    int R_inf = 0;
    int L_c = 0;
    double L_c_approx = 0.0;
    /// False when R_L still grows between L_max - 1 and L_max.
    bool l_plateau = true;
    RankProtocol protocol;
    /// Depth curves of every (redraw, L) cell, redraw-major.
    std::vector<RankEstimate> cells;

    int R(int L) const;
    int M_c(int L) const;
};

/// Runs estimate_max_rank for L = 1..L_max over protocol.n_data redraws and
/// reports whether R_L has stopped growing in `l_plateau` instead of throwing.
SaturationProfile compute_saturation_profile(Family family, int n_qubits, const EnsembleSpec &spec, int L_max,
                                             const RankProtocol &protocol);

/// compute_saturation_profile that throws NoPlateauError without an L plateau.
SaturationProfile saturation_profile(Family family, int n_qubits, const EnsembleSpec &spec, int L_max,
                                     const RankProtocol &protocol);

} // namespace dqfim
