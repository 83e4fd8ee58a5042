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

#include <span>
#include <string>
#include <vector>

#include "dqfim/pauli.h"
#include "dqfim/state_vector.h"

namespace dqfim {

/// A fixed 1- or 2-qubit unitary bound to target qubits.
///
/// For two targets (a, b) the 4x4 matrix is indexed by bit(a) + 2 * bit(b), so the
/// first target is the low bit of the local index.
class LocalGate {
  public:
    LocalGate(std::string name, std::vector<int> targets, Eigen::MatrixXcd matrix);

    const std::string &name() const { return name_; }
    const std::vector<int> &targets() const { return targets_; }
    int arity() const { return static_cast<int>(targets_.size()); }
    const Eigen::MatrixXcd &matrix() const { return matrix_; }
    LocalGate adjoint() const;

    /// Applies the gate in place. Targets must be < n_qubits of the buffer.
    void apply(std::span<cplx> amps) const;

  private:
    std::string name_;
    std::vector<int> targets_;
    Eigen::MatrixXcd matrix_;
};

LocalGate make_cnot(int control, int target);
/// diag(1, 1, 1, -1)
LocalGate make_cz(int a, int b);
/// diag(1, 1, 1, i)
LocalGate make_sqrt_cz(int a, int b);
/// exp(i pi/8 (XX + YY))
LocalGate make_sqrt_iswap(int a, int b);
/// sqrt(CZ) * sqrt(iSWAP); the two factors commute.
LocalGate make_sqrt_iswap_z(int a, int b);

/// Returns apply_local_gate(state) as a new state. Throws on bad targets.
StateVector apply_local_gate(const StateVector &state, const LocalGate &gate);

// Raw kernels. `m` is row-major.
void apply_matrix_1q(std::span<cplx> amps, const cplx *m, int qubit);
void apply_matrix_2q(std::span<cplx> amps, const cplx *m, int q0, int q1);
/// amps <- exp(-i theta P_qubit) amps.
void apply_pauli_rotation(std::span<cplx> amps, Pauli axis, int qubit, double theta);
/// amps <- P_qubit amps.
void apply_pauli(std::span<cplx> amps, Pauli axis, int qubit);

/// exp(-i theta P) as a dense 2x2 matrix.
Eigen::Matrix2cd rotation_matrix(Pauli axis, double theta);

} // namespace dqfim
