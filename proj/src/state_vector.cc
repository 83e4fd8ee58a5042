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

#include "dqfim/state_vector.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dqfim {

namespace {

constexpr int kMaxQubits = 30;

void check_qubits(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("n_qubits must be in [1, 30], got " + std::to_string(n_qubits));
    }
}

} // namespace

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {}

StateVector StateVector::zero(int n_qubits) { return basis(n_qubits, 0); }

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    check_qubits(n_qubits);
    std::uint64_t dim = std::uint64_t{1} << n_qubits;
    if (index >= dim) {
        throw std::out_of_range("basis index " + std::to_string(index) + " out of range for " +
                                std::to_string(n_qubits) + " qubits");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(n_qubits, std::move(v));
}

StateVector StateVector::from_label(std::string_view bits) {
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] == '1') {
            index |= std::uint64_t{1} << k;
        } else if (bits[k] != '0') {
            throw std::invalid_argument("basis label must contain only '0' and '1': " + std::string(bits));
        }
    }
    return basis(static_cast<int>(bits.size()), index);
}

StateVector StateVector::from_amplitudes(int n_qubits, Eigen::VectorXcd amplitudes) {
    check_qubits(n_qubits);
    if (static_cast<std::uint64_t>(amplitudes.size()) != (std::uint64_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count does not match 2^n_qubits");
    }
    if (!amplitudes.allFinite()) {
        throw std::invalid_argument("amplitudes must be finite");
    }
    double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-8) {
        throw std::invalid_argument("amplitudes are not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
    }
    amplitudes /= std::sqrt(norm2);
    return StateVector(n_qubits, std::move(amplitudes));
}

StateVector StateVector::normalized(int n_qubits, Eigen::VectorXcd amplitudes) {
    check_qubits(n_qubits);
    if (static_cast<std::uint64_t>(amplitudes.size()) != (std::uint64_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count does not match 2^n_qubits");
    }
    double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return StateVector(n_qubits, std::move(amplitudes));
}

cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());
}

Eigen::VectorXcd sample_haar_vector(std::size_t dim, Rng &rng) {
    if (dim == 0) {
        throw std::invalid_argument("sample_haar_vector: dim must be >= 1");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (auto &z : v) {
        double re = normal(rng);
        double im = normal(rng);
        z = cplx(re, im);
    }
    return v / v.norm();
}

int qubits_for_dim(std::size_t dim) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return std::countr_zero(dim);
}

} // namespace dqfim
