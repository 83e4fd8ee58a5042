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

#include <numbers>

#include <gtest/gtest.h>

#include "dense_oracle.h"

namespace dqfim {
namespace {

Eigen::VectorXcd random_amplitudes(int n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_haar_vector(std::size_t{1} << n, rng);
}

TEST(LocalGateTest, CnotTruthTable) {
    auto out = apply_local_gate(StateVector::from_label("10"), make_cnot(0, 1));
    EXPECT_EQ(out[3], cplx(1, 0));
    auto idle = apply_local_gate(StateVector::from_label("01"), make_cnot(0, 1));
    EXPECT_EQ(idle[2], cplx(1, 0));
}

TEST(LocalGateTest, CzFlipsOnlyOneOne) {
    auto out = apply_local_gate(StateVector::from_label("11"), make_cz(0, 1));
    EXPECT_EQ(out[3], cplx(-1, 0));
}

TEST(LocalGateTest, SqrtIswapSquaredMatchesMatrixExponential) {
    Eigen::MatrixXcd xx_yy = oracle::kron(oracle::pauli_matrix(Pauli::X), oracle::pauli_matrix(Pauli::X)) +
                             oracle::kron(oracle::pauli_matrix(Pauli::Y), oracle::pauli_matrix(Pauli::Y));
    Eigen::MatrixXcd ref = (cplx(0, std::numbers::pi / 8) * xx_yy).exp();
    EXPECT_LT((make_sqrt_iswap(0, 1).matrix() - ref).cwiseAbs().maxCoeff(), 1e-14);

    Eigen::VectorXcd e01 = StateVector::from_label("10").amplitudes();
    Eigen::VectorXcd expected = (ref * ref) * e01;
    EXPECT_NEAR(std::abs(expected[2] - cplx(0, 1)), 0.0, 1e-14);

    auto once = apply_local_gate(StateVector::from_label("10"), make_sqrt_iswap(0, 1));
    auto twice = apply_local_gate(once, make_sqrt_iswap(0, 1));
    EXPECT_LT((twice.amplitudes() - expected).norm(), 1e-14);
}

TEST(LocalGateTest, SqrtIswapZIsProductOfCommutingFactors) {
    Eigen::MatrixXcd a = make_sqrt_cz(0, 1).matrix();
    Eigen::MatrixXcd b = make_sqrt_iswap(0, 1).matrix();
    EXPECT_LT((a * b - b * a).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((make_sqrt_iswap_z(0, 1).matrix() - a * b).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LocalGateTest, RotationKernelsMatchDenseExponential) {
    const int n = 3;
    for (Pauli axis : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
        for (int q = 0; q < n; ++q) {
            const double theta = 0.37 + q;
            Eigen::VectorXcd v = random_amplitudes(n, 5 + q);
            Eigen::VectorXcd expected = oracle::rotation(axis, q, n, theta) * v;
            apply_pauli_rotation(amplitude_span(v), axis, q, theta);
            EXPECT_LT((v - expected).norm(), 1e-13) << pauli_char(axis) << q;
        }
        EXPECT_LT((rotation_matrix(axis, 0.9) - oracle::rotation(axis, 0, 1, 0.9)).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(LocalGateTest, RyHalfPiSendsZeroToOne) {
    Eigen::VectorXcd v = StateVector::zero(1).amplitudes();
    apply_pauli_rotation(amplitude_span(v), Pauli::Y, 0, std::numbers::pi / 2);
    EXPECT_NEAR(std::abs(v[1]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(v[0]), 0.0, 1e-15);
}

TEST(LocalGateTest, PauliKernelsMatchDenseMatrices) {
    const int n = 3;
    for (Pauli axis : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
        for (int q = 0; q < n; ++q) {
            Eigen::VectorXcd v = random_amplitudes(n, 17 + q);
            Eigen::VectorXcd expected = oracle::single_site(oracle::pauli_matrix(axis), q, n) * v;
            apply_pauli(amplitude_span(v), axis, q);
            EXPECT_LT((v - expected).norm(), 1e-14);
        }
    }
}

TEST(LocalGateTest, TwoQubitKernelMatchesEmbeddingForAnyTargetOrder) {
    const int n = 4;
    Rng rng(23);
    Eigen::MatrixXcd g(4, 4);
    for (int c = 0; c < 4; ++c) {
        g.col(c) = sample_haar_vector(4, rng);
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd u = qr.householderQ();
    const std::pair<int, int> pairs[] = {{0, 1}, {1, 0}, {0, 3}, {3, 1}, {2, 3}};
    for (auto [a, b] : pairs) {
        LocalGate gate("U", {a, b}, u);
        auto in = StateVector::normalized(n, random_amplitudes(n, 31 + a * 4 + b));
        Eigen::VectorXcd expected = oracle::two_site(u, a, b, n) * in.amplitudes();
        EXPECT_LT((apply_local_gate(in, gate).amplitudes() - expected).norm(), 1e-13) << a << b;
        auto back = apply_local_gate(apply_local_gate(in, gate), gate.adjoint());
        EXPECT_LT((back.amplitudes() - in.amplitudes()).norm(), 1e-13);
    }
}

TEST(LocalGateTest, ValidatesConstruction) {
    Eigen::Matrix4cd bad = Eigen::Matrix4cd::Identity();
    bad(0, 0) = 2.0;
    EXPECT_THROW(LocalGate("bad", {0, 1}, bad), std::invalid_argument);
    EXPECT_THROW(LocalGate("dup", {1, 1}, Eigen::Matrix4cd::Identity()), std::invalid_argument);
    EXPECT_THROW(LocalGate("size", {0}, Eigen::Matrix4cd::Identity()), std::invalid_argument);
    EXPECT_THROW(LocalGate("arity", {0, 1, 2}, Eigen::MatrixXcd::Identity(8, 8)), std::invalid_argument);
    EXPECT_THROW(apply_local_gate(StateVector::zero(2), make_cnot(1, 2)), std::out_of_range);
}

} // namespace
} // namespace dqfim
