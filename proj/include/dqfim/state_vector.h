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

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace dqfim {

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

/// Normalized pure state of `n_qubits` qubits.
///
/// Amplitudes are little-endian: bit k of the basis index is qubit k. Every
/// factory renormalizes, so the squared norm is 1 to rounding.
class StateVector {
  public:
    /// |0...0>.
    static StateVector zero(int n_qubits);
    static StateVector basis(int n_qubits, std::uint64_t index);
    /// Character k of `bits` is the value of qubit k, e.g. "10" has qubit 0 set.
    static StateVector from_label(std::string_view bits);
    /// Accepts amplitudes whose squared norm is 1 within 1e-8 and renormalizes.
    static StateVector from_amplitudes(int n_qubits, Eigen::VectorXcd amplitudes);
    /// Scales any nonzero vector to unit norm.
    static StateVector normalized(int n_qubits, Eigen::VectorXcd amplitudes);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Eigen::VectorXcd &amplitudes() const { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  private:
    StateVector(int n_qubits, Eigen::VectorXcd amps);

    int n_qubits_;
    Eigen::VectorXcd amps_;
};

/// <a|b>, conjugating a.
cplx inner_product(const StateVector &a, const StateVector &b);

/// Haar-uniform unit vector in C^dim: i.i.d. complex Gaussians, normalized.
Eigen::VectorXcd sample_haar_vector(std::size_t dim, Rng &rng);

/// Raw-amplitude view used by the gate kernels.
inline std::span<cplx> amplitude_span(Eigen::VectorXcd &v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}
inline std::span<const cplx> amplitude_span(const Eigen::VectorXcd &v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

/// Number of qubits for a 2^n amplitude count; throws if `dim` is not a power of two.
int qubits_for_dim(std::size_t dim);

} // namespace dqfim
