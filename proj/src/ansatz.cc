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

#include "dqfim/ansatz.h"

#include <algorithm>
#include <cctype>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace dqfim {

namespace {

std::vector<std::pair<int, int>> brickwork_bonds(int n, bool periodic) {
    // Even bonds first, then odd bonds, then the ring-closing bond.
    std::vector<std::pair<int, int>> bonds;
    for (int parity = 0; parity < 2; ++parity) {
        for (int k = parity; k + 1 < n; k += 2) {
            bonds.emplace_back(k, k + 1);
        }
    }
    if (periodic && n > 2) {
        bonds.emplace_back(n - 1, 0);
    }
    return bonds;
}

std::vector<CircuitElement> family_layer(Family family, int n) {
    std::vector<CircuitElement> layer;
    auto rotations = [&](Pauli axis) {
        for (int q = 0; q < n; ++q) {
            layer.emplace_back(ParamRotation{axis, q, 0});
        }
    };
    switch (family) {
    case Family::HE:
        rotations(Pauli::Y);
        rotations(Pauli::Z);
        for (int k = 0; k + 1 < n; ++k) {
            layer.emplace_back(FixedGate(make_cnot(k, k + 1)));
        }
        break;
    case Family::XY_PERIODIC:
    case Family::XY_OPEN:
        rotations(Pauli::Z);
        for (auto [a, b] : brickwork_bonds(n, family == Family::XY_PERIODIC)) {
            layer.emplace_back(FixedGate(make_sqrt_iswap(a, b)));
        }
        break;
    case Family::XXZ:
        rotations(Pauli::Z);
        for (auto [a, b] : brickwork_bonds(n, true)) {
            layer.emplace_back(FixedGate(make_sqrt_iswap_z(a, b)));
        }
        break;
    case Family::Y_CZ:
        rotations(Pauli::Y);
        for (int k = 0; k + 1 < n; ++k) {
            layer.emplace_back(FixedGate(make_cz(k, k + 1)));
        }
        break;
    case Family::Z_TOY: rotations(Pauli::Z); break;
    case Family::CUSTOM: throw std::invalid_argument("CUSTOM ansatz has no built-in layer");
    }
    return layer;
}

int min_qubits(Family family) {
    switch (family) {
    case Family::HE:
    case Family::Z_TOY: return 1;
    default: return 2;
    }
}

template <typename Fn>
void for_each_column(Eigen::MatrixXcd &block, Eigen::Index n_cols, Fn &&fn) {
    for (Eigen::Index c = 0; c < n_cols; ++c) {
        fn(std::span<cplx>(block.col(c).data(), static_cast<std::size_t>(block.rows())));
    }
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
    case Family::HE: return "he";
    case Family::XY_PERIODIC: return "xy";
    case Family::XY_OPEN: return "xy_open";
    case Family::XXZ: return "xxz";
    case Family::Y_CZ: return "y_cz";
    case Family::Z_TOY: return "z_toy";
    case Family::CUSTOM: return "custom";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    std::replace(s.begin(), s.end(), '-', '_');
    if (s == "he") return Family::HE;
    if (s == "xy" || s == "xy_periodic") return Family::XY_PERIODIC;
    if (s == "xy_open") return Family::XY_OPEN;
    if (s == "xxz") return Family::XXZ;
    if (s == "y_cz" || s == "ycz") return Family::Y_CZ;
    if (s == "z_toy") return Family::Z_TOY;
    throw std::invalid_argument("unknown ansatz family '" + std::string(name) + "'");
}

Ansatz Ansatz::build(Family family, int n_qubits, int n_layers) {
    if (family == Family::CUSTOM) {
        throw std::invalid_argument("use Ansatz::from_layer for custom circuits");
    }
    if (n_qubits < min_qubits(family)) {
        throw std::invalid_argument(family_name(family) + " ansatz needs at least " +
                                    std::to_string(min_qubits(family)) + " qubits");
    }
    if (family == Family::Z_TOY && n_qubits != 1) {
        throw std::invalid_argument("z_toy ansatz is a single-qubit circuit");
    }
    return from_layer(n_qubits, family_layer(family, n_qubits), n_layers, family);
}

Ansatz Ansatz::from_layer(int n_qubits, const std::vector<CircuitElement> &layer, int n_layers, Family family) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("ansatz n_qubits must be in [1, 30]");
    }
    if (n_layers < 1) {
        throw std::invalid_argument("ansatz needs at least one layer");
    }
    Ansatz a;
    a.family_ = family;
    a.n_qubits_ = n_qubits;
    a.n_layers_ = n_layers;
    a.layer_size_ = layer.size();
    for (const auto &e : layer) {
        if (const auto *r = std::get_if<ParamRotation>(&e)) {
            if (r->qubit < 0 || r->qubit >= n_qubits) {
                throw std::out_of_range("rotation qubit out of range");
            }
            ++a.params_per_layer_;
        } else {
            for (int t : std::get<FixedGate>(e).gate.targets()) {
                if (t >= n_qubits) {
                    throw std::out_of_range("fixed gate target out of range");
                }
            }
        }
    }
    a.elements_.reserve(layer.size() * static_cast<std::size_t>(n_layers));
    int next = 0;
    for (int g = 0; g < n_layers; ++g) {
        for (const auto &e : layer) {
            if (const auto *r = std::get_if<ParamRotation>(&e)) {
                a.elements_.emplace_back(ParamRotation{r->axis, r->qubit, next++});
            } else {
                a.elements_.push_back(e);
            }
        }
    }
    return a;
}

std::vector<CircuitElement> Ansatz::layer() const {
    return {elements_.begin(), elements_.begin() + static_cast<std::ptrdiff_t>(layer_size_)};
}

int Ansatz::fixed_gates_per_layer() const {
    return static_cast<int>(layer_size_) - params_per_layer_;
}

ParameterVector random_parameters(const Ansatz &ansatz, Rng &rng) {
    std::uniform_real_distribution<double> uniform(0.0, 2 * std::numbers::pi);
    ParameterVector theta(ansatz.n_params());
    for (auto &t : theta) {
        t = uniform(rng);
    }
    return theta;
}

void check_parameters(const Ansatz &ansatz, const ParameterVector &theta) {
    if (theta.size() != ansatz.n_params()) {
        throw std::invalid_argument("parameter vector has length " + std::to_string(theta.size()) + ", ansatz needs " +
                                    std::to_string(ansatz.n_params()));
    }
}

void apply_circuit_inplace(const Ansatz &ansatz, const ParameterVector &theta, Eigen::VectorXcd &amps) {
    check_parameters(ansatz, theta);
    if (static_cast<std::size_t>(amps.size()) != ansatz.dim()) {
        throw std::invalid_argument("state dimension does not match ansatz");
    }
    auto span = amplitude_span(amps);
    for (const auto &e : ansatz.elements()) {
        if (const auto *r = std::get_if<ParamRotation>(&e)) {
            apply_pauli_rotation(span, r->axis, r->qubit, theta[r->param]);
        } else {
            std::get<FixedGate>(e).gate.apply(span);
        }
    }
}

void apply_circuit_adjoint_inplace(const Ansatz &ansatz, const ParameterVector &theta, Eigen::VectorXcd &amps) {
    check_parameters(ansatz, theta);
    if (static_cast<std::size_t>(amps.size()) != ansatz.dim()) {
        throw std::invalid_argument("state dimension does not match ansatz");
    }
    auto span = amplitude_span(amps);
    const auto &els = ansatz.elements();
    for (auto it = els.rbegin(); it != els.rend(); ++it) {
        if (const auto *r = std::get_if<ParamRotation>(&*it)) {
            apply_pauli_rotation(span, r->axis, r->qubit, -theta[r->param]);
        } else {
            std::get<FixedGate>(*it).inverse.apply(span);
        }
    }
}

StateVector apply_circuit(const Ansatz &ansatz, const ParameterVector &theta, const StateVector &state) {
    if (state.n_qubits() != ansatz.n_qubits()) {
        throw std::invalid_argument("state has " + std::to_string(state.n_qubits()) + " qubits, ansatz has " +
                                    std::to_string(ansatz.n_qubits()));
    }
    Eigen::VectorXcd amps = state.amplitudes();
    apply_circuit_inplace(ansatz, theta, amps);
    return StateVector::normalized(ansatz.n_qubits(), std::move(amps));
}

JacobianBundle circuit_jacobian(const Ansatz &ansatz, const ParameterVector &theta, const StateVector &state) {
    check_parameters(ansatz, theta);
    if (state.n_qubits() != ansatz.n_qubits()) {
        throw std::invalid_argument("state does not match ansatz width");
    }
    const auto dim = static_cast<Eigen::Index>(ansatz.dim());
    Eigen::VectorXcd psi = state.amplitudes();
    Eigen::MatrixXcd deriv(dim, ansatz.n_params());
    Eigen::Index filled = 0;
    auto psi_span = amplitude_span(psi);
    for (const auto &e : ansatz.elements()) {
        if (const auto *r = std::get_if<ParamRotation>(&e)) {
            double t = theta[r->param];
            apply_pauli_rotation(psi_span, r->axis, r->qubit, t);
            for_each_column(deriv, filled, [&](std::span<cplx> c) { apply_pauli_rotation(c, r->axis, r->qubit, t); });
            // The generator commutes with its own rotation, so -i P acts on the rotated state.
            deriv.col(filled) = psi;
            std::span<cplx> fresh(deriv.col(filled).data(), static_cast<std::size_t>(dim));
            apply_pauli(fresh, r->axis, r->qubit);
            deriv.col(filled) *= cplx(0, -1);
            ++filled;
        } else {
            const auto &g = std::get<FixedGate>(e).gate;
            g.apply(psi_span);
            for_each_column(deriv, filled, [&](std::span<cplx> c) { g.apply(c); });
        }
    }
    return JacobianBundle{StateVector::normalized(ansatz.n_qubits(), std::move(psi)), std::move(deriv)};
}

PauliSum gate_generator(const LocalGate &gate, int n_qubits) {
    Eigen::MatrixXcd u = gate.matrix();
    Eigen::MatrixXcd h = cplx(0, 1) * u.log();
    h = (0.5 * (h + h.adjoint())).eval();
    PauliSum local = pauli_decompose(h, 1e-12).traceless();
    std::vector<PauliTerm> terms;
    for (const auto &t : local.terms()) {
        PauliWord w;
        for (int k = 0; k < gate.arity(); ++k) {
            PauliWord s = PauliWord::single(gate.targets()[static_cast<std::size_t>(k)], t.word.at(k));
            w.x |= s.x;
            w.z |= s.z;
        }
        terms.push_back({w, t.coefficient});
    }
    return PauliSum(n_qubits, std::move(terms));
}

std::vector<PauliSum> generator_set(const Ansatz &ansatz) {
    std::vector<PauliSum> out;
    for (const auto &e : ansatz.layer()) {
        if (const auto *r = std::get_if<ParamRotation>(&e)) {
            out.push_back(PauliSum::single(ansatz.n_qubits(), PauliWord::single(r->qubit, r->axis)));
        } else {
            PauliSum h = gate_generator(std::get<FixedGate>(e).gate, ansatz.n_qubits());
            if (!h.empty()) {
                out.push_back(std::move(h));
            }
        }
    }
    return out;
}

} // namespace dqfim
