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

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dqfim/local_gate.h"
#include "dqfim/pauli.h"
#include "dqfim/state_vector.h"

namespace dqfim {

enum class Family {
    HE,
    XY_PERIODIC,
    XY_OPEN,
    XXZ,
    Y_CZ,
    /// Single-qubit stack of R_z rotations; all generators commute.
    Z_TOY,
    CUSTOM,
};

std::string family_name(Family f);
/// Accepts "he", "xy" (alias of "xy_periodic"), "xy_open", "xxz", "y_cz", "z_toy".
Family parse_family(std::string_view name);

/// exp(-i theta P) on `qubit`, with theta = params[param].
struct ParamRotation {
    Pauli axis;
    int qubit;
    int param;
};

struct FixedGate {
    LocalGate gate;
    LocalGate inverse;
    explicit FixedGate(LocalGate g) : gate(g), inverse(g.adjoint()) {}
};

using CircuitElement = std::variant<ParamRotation, FixedGate>;

using ParameterVector = Eigen::VectorXd;

/// Layered circuit U(theta) = U_G(theta_G) ... U_1(theta_1). Elements are stored
/// unrolled in application order; parameter indices run 0..M-1 in order of
/// appearance, so layer g owns indices [g K, (g+1) K).
class Ansatz {
  public:
    static Ansatz build(Family family, int n_qubits, int n_layers);
    /// Repeats `layer` n_layers times. Rotation `param` fields in the layer are
    /// ignored and renumbered in order of appearance.
    static Ansatz from_layer(int n_qubits, const std::vector<CircuitElement> &layer, int n_layers,
                             Family family = Family::CUSTOM);

    Family family() const { return family_; }
    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return std::size_t{1} << n_qubits_; }
    int n_layers() const { return n_layers_; }
    int params_per_layer() const { return params_per_layer_; }
    int n_params() const { return n_layers_ * params_per_layer_; }
    const std::vector<CircuitElement> &elements() const { return elements_; }
    /// Elements of the first layer only.
    std::vector<CircuitElement> layer() const;
    int fixed_gates_per_layer() const;

  private:
    Family family_ = Family::CUSTOM;
    int n_qubits_ = 0;
    int n_layers_ = 0;
    int params_per_layer_ = 0;
    std::size_t layer_size_ = 0;
    std::vector<CircuitElement> elements_;
};

/// Uniform on [0, 2 pi) per component.
ParameterVector random_parameters(const Ansatz &ansatz, Rng &rng);

void check_parameters(const Ansatz &ansatz, const ParameterVector &theta);

/// In-place U(theta) on raw amplitudes.
void apply_circuit_inplace(const Ansatz &ansatz, const ParameterVector &theta, Eigen::VectorXcd &amps);
/// In-place U(theta)^dagger.
void apply_circuit_adjoint_inplace(const Ansatz &ansatz, const ParameterVector &theta, Eigen::VectorXcd &amps);
StateVector apply_circuit(const Ansatz &ansatz, const ParameterVector &theta, const StateVector &state);

struct JacobianBundle {
    StateVector output;
    /// Column n is d/dtheta_n U(theta)|state>.
    Eigen::MatrixXcd derivatives;
};

/// Exact derivatives of U(theta)|state>. One forward sweep carries the output
/// state together with every derivative column created so far.
JacobianBundle circuit_jacobian(const Ansatz &ansatz, const ParameterVector &theta, const StateVector &state);

/// Hermitian generators of one layer: each rotation axis and, for every fixed
/// gate, the traceless H with gate = exp(-i H) up to global phase.
std::vector<PauliSum> generator_set(const Ansatz &ansatz);

/// Traceless Hermitian H with u = exp(-i H) up to phase, from the principal logarithm.
PauliSum gate_generator(const LocalGate &gate, int n_qubits);

} // namespace dqfim
