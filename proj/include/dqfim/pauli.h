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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dqfim {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// Pauli string on up to 64 qubits in symplectic form: qubit k carries X^x_k Z^z_k
/// up to phase, with Y encoded as x = z = 1.
struct PauliWord {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    static PauliWord single(int qubit, Pauli p);
    Pauli at(int qubit) const;
    bool is_identity() const { return x == 0 && z == 0; }
    bool commutes_with(const PauliWord &other) const;

    auto operator<=>(const PauliWord &) const = default;
};

struct PauliTerm {
    PauliWord word;
    double coefficient = 0.0;
};

/// Hermitian operator sum_k c_k P_k with real coefficients. Terms are kept sorted by
/// word with no duplicates and no exact zeros.
class PauliSum {
  public:
    explicit PauliSum(int n_qubits = 1);
    PauliSum(int n_qubits, std::vector<PauliTerm> terms);

    /// Parses "1.5*XXI + -0.5*ZII" style text; character k of a word is qubit k.
    static PauliSum parse(int n_qubits, std::string_view text);
    static PauliSum single(int n_qubits, PauliWord word, double coefficient = 1.0);

    int n_qubits() const { return n_qubits_; }
    const std::vector<PauliTerm> &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    double coefficient(PauliWord w) const;

    /// Normalized Hilbert-Schmidt inner product tr(A B) / 2^N = sum_k a_k b_k.
    double dot(const PauliSum &other) const;
    double norm() const;

    PauliSum &operator+=(const PauliSum &other);
    PauliSum &operator*=(double s);
    /// this += s * other.
    void axpy(double s, const PauliSum &other);
    /// Drops the identity component and every |c| <= threshold.
    PauliSum traceless(double threshold = 0.0) const;

    Eigen::MatrixXcd to_dense() const;
    std::string str() const;

  private:
    void canonicalize(double threshold);

    int n_qubits_;
    std::vector<PauliTerm> terms_;
};

/// Returns C with [a, b] = i C. C is Hermitian with real coefficients.
PauliSum pauli_commutator(const PauliSum &a, const PauliSum &b);

/// Pauli decomposition of a Hermitian matrix: c_P = Re tr(P H) / 2^N.
PauliSum pauli_decompose(const Eigen::MatrixXcd &hermitian, double threshold = 1e-13);

} // namespace dqfim
