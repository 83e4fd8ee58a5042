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
#include <span>
#include <vector>

#include "dqfim/ansatz.h"
#include "dqfim/state_vector.h"
#include "dqfim/symmetric_matrix.h"

namespace dqfim {

/// Orthonormal basis of the span of a set of training states.
struct DataProjector {
    int n_qubits = 0;
    /// d x B_L, orthonormal columns.
    Eigen::MatrixXcd basis;
    /// Nonzero eigenvalues of rho_L = (1/L) sum |psi><psi|, descending, one per column.
    Eigen::VectorXd weights;

    int rank() const { return static_cast<int>(basis.cols()); }
    StateVector state(int k) const;
};

/// Builds the projector from the L x L Gram matrix of `states`, keeping
/// eigenvalues above tol * max. Throws on an empty list or mixed widths.
DataProjector build_projector(std::span<const StateVector> states, double tol = 1e-10);

/// Projector onto the whole Hilbert space (computational basis).
DataProjector full_projector(int n_qubits);

struct DQFIMMatrix {
    SymmetricMatrix matrix;
    int projector_rank = 0;
};

/// Q_nm = 4 Re[(1/B) sum_k <d_n U phi_k | d_m U phi_k>
///             - conj(a_n) a_m],   a_m = (1/B) sum_k <U phi_k | d_m U phi_k>.
DQFIMMatrix compute_dqfim(const Ansatz &ansatz, const ParameterVector &theta, const DataProjector &proj);

/// Same assembly from precomputed Jacobians, one per basis state.
DQFIMMatrix assemble_dqfim(std::span<const JacobianBundle> jacobians);

struct RankResult {
    int rank = 0;
    /// smallest kept eigenvalue / largest discarded one.
    double spectral_gap = 0.0;
};

RankResult effective_dimension(const Ansatz &ansatz, const ParameterVector &theta, const DataProjector &proj,
                               RankTolerance tol = {});

/// Real parameter count of an isometry from an L-dimensional subspace into C^d,
/// modulo global phase: 2dL - L^2 - 1 for L <= d, else d^2 - 1.
std::int64_t unitary_bound(std::int64_t d, std::int64_t L);

} // namespace dqfim
