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

#include "dqfim/local_gate.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dqfim {

namespace {

constexpr double kUnitarityTol = 1e-12;

void check_targets(const std::vector<int> &targets, int n_qubits) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= n_qubits) {
            throw std::out_of_range("gate target " + std::to_string(targets[i]) + " out of range for " +
                                    std::to_string(n_qubits) + " qubits");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("duplicate gate targets");
            }
        }
    }
}

} // namespace

LocalGate::LocalGate(std::string name, std::vector<int> targets, Eigen::MatrixXcd matrix)
    : name_(std::move(name)), targets_(std::move(targets)), matrix_(std::move(matrix)) {
    if (targets_.size() != 1 && targets_.size() != 2) {
        throw std::invalid_argument("LocalGate arity must be 1 or 2");
    }
    check_targets(targets_, 64);
    auto dim = Eigen::Index{1} << targets_.size();
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw std::invalid_argument("LocalGate matrix has wrong dimension");
    }
    Eigen::MatrixXcd defect = matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(dim, dim);
    if (defect.cwiseAbs().maxCoeff() > kUnitarityTol) {
        throw std::invalid_argument("LocalGate matrix '" + name_ + "' is not unitary");
    }
    // Kernels read the matrix row-major.
    matrix_ = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>(matrix_);
}

LocalGate LocalGate::adjoint() const { return LocalGate(name_ + "^dag", targets_, matrix_.adjoint()); }

void LocalGate::apply(std::span<cplx> amps) const {
    // matrix_ is column-major storage; transpose into a row-major buffer.
    cplx m[16];
    auto dim = matrix_.rows();
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            m[r * dim + c] = matrix_(r, c);
        }
    }
    if (targets_.size() == 1) {
        apply_matrix_1q(amps, m, targets_[0]);
    } else {
        apply_matrix_2q(amps, m, targets_[0], targets_[1]);
    }
}

LocalGate make_cnot(int control, int target) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1;
    m(2, 2) = 1;
    m(3, 1) = 1;
    m(1, 3) = 1;
    return LocalGate("CNOT", {control, target}, m);
}

LocalGate make_cz(int a, int b) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(3, 3) = -1;
    return LocalGate("CZ", {a, b}, m);
}

LocalGate make_sqrt_cz(int a, int b) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(3, 3) = cplx(0, 1);
    return LocalGate("SQRT_CZ", {a, b}, m);
}

LocalGate make_sqrt_iswap(int a, int b) {
    // XX + YY acts as 2 sigma_x on span{|01>, |10>}, so the exponential is
    // cos(pi/4) + i sin(pi/4) sigma_x there and identity elsewhere.
    const double c = std::numbers::sqrt2 / 2;
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(1, 1) = c;
    m(2, 2) = c;
    m(1, 2) = cplx(0, c);
    m(2, 1) = cplx(0, c);
    return LocalGate("SQRT_ISWAP", {a, b}, m);
}

LocalGate make_sqrt_iswap_z(int a, int b) {
    Eigen::MatrixXcd m = make_sqrt_cz(a, b).matrix() * make_sqrt_iswap(a, b).matrix();
    return LocalGate("SQRT_ISWAP_Z", {a, b}, m);
}

StateVector apply_local_gate(const StateVector &state, const LocalGate &gate) {
    check_targets(gate.targets(), state.n_qubits());
    Eigen::VectorXcd amps = state.amplitudes();
    gate.apply(amplitude_span(amps));
    return StateVector::normalized(state.n_qubits(), std::move(amps));
}

void apply_matrix_1q(std::span<cplx> amps, const cplx *m, int qubit) {
    const std::size_t bit = std::size_t{1} << qubit;
    const std::size_t n = amps.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i & bit) {
            continue;
        }
        cplx a0 = amps[i];
        cplx a1 = amps[i | bit];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void apply_matrix_2q(std::span<cplx> amps, const cplx *m, int q0, int q1) {
    const std::size_t b0 = std::size_t{1} << q0;
    const std::size_t b1 = std::size_t{1} << q1;
    const std::size_t n = amps.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i & (b0 | b1)) {
            continue;
        }
        const std::size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
        cplx v[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            amps[idx[r]] = m[4 * r] * v[0] + m[4 * r + 1] * v[1] + m[4 * r + 2] * v[2] + m[4 * r + 3] * v[3];
        }
    }
}

void apply_pauli_rotation(std::span<cplx> amps, Pauli axis, int qubit, double theta) {
    const std::size_t bit = std::size_t{1} << qubit;
    const std::size_t n = amps.size();
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    switch (axis) {
    case Pauli::I: {
        const cplx phase(c, -s);
        for (auto &a : amps) {
            a *= phase;
        }
        break;
    }
    case Pauli::Z: {
        const cplx lo(c, -s);
        const cplx hi(c, s);
        for (std::size_t i = 0; i < n; ++i) {
            amps[i] *= (i & bit) ? hi : lo;
        }
        break;
    }
    case Pauli::Y: {
        // [[c, -s], [s, c]]
        for (std::size_t i = 0; i < n; ++i) {
            if (i & bit) {
                continue;
            }
            cplx a0 = amps[i];
            cplx a1 = amps[i | bit];
            amps[i] = c * a0 - s * a1;
            amps[i | bit] = s * a0 + c * a1;
        }
        break;
    }
    case Pauli::X: {
        // [[c, -is], [-is, c]]
        const cplx mis(0, -s);
        for (std::size_t i = 0; i < n; ++i) {
            if (i & bit) {
                continue;
            }
            cplx a0 = amps[i];
            cplx a1 = amps[i | bit];
            amps[i] = c * a0 + mis * a1;
            amps[i | bit] = mis * a0 + c * a1;
        }
        break;
    }
    }
}

void apply_pauli(std::span<cplx> amps, Pauli axis, int qubit) {
    const std::size_t bit = std::size_t{1} << qubit;
    const std::size_t n = amps.size();
    switch (axis) {
    case Pauli::I: break;
    case Pauli::Z:
        for (std::size_t i = 0; i < n; ++i) {
            if (i & bit) {
                amps[i] = -amps[i];
            }
        }
        break;
    case Pauli::X:
        for (std::size_t i = 0; i < n; ++i) {
            if (!(i & bit)) {
                std::swap(amps[i], amps[i | bit]);
            }
        }
        break;
    case Pauli::Y:
        // Y|0> = i|1>, Y|1> = -i|0>
        for (std::size_t i = 0; i < n; ++i) {
            if (!(i & bit)) {
                cplx a0 = amps[i];
                cplx a1 = amps[i | bit];
                amps[i] = cplx(a1.imag(), -a1.real());     // -i * a1
                amps[i | bit] = cplx(-a0.imag(), a0.real()); // i * a0
            }
        }
        break;
    }
}

Eigen::Matrix2cd rotation_matrix(Pauli axis, double theta) {
    Eigen::Matrix2cd p;
    switch (axis) {
    case Pauli::I: p << 1, 0, 0, 1; break;
    case Pauli::X: p << 0, 1, 1, 0; break;
    case Pauli::Y: p << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case Pauli::Z: p << 1, 0, 0, -1; break;
    }
    return std::cos(theta) * Eigen::Matrix2cd::Identity() - cplx(0, std::sin(theta)) * p;
}

} // namespace dqfim
