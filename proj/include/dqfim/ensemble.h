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
#include <vector>

#include "dqfim/ansatz.h"
#include "dqfim/state_vector.h"

namespace dqfim {

struct EnsembleSpec {
    enum class Kind { HAAR, PRODUCT, SYMMETRIC_SECTOR, COMPUTATIONAL_BASIS };

    Kind kind = Kind::HAAR;
    /// Hamming weight for SYMMETRIC_SECTOR.
    int p = 0;

    /// "haar", "product", "sector:<p>", "basis".
    static EnsembleSpec parse(std::string_view text);
    std::string str() const;
    /// Throws if p is outside [0, n_qubits] for a sector spec.
    void validate(int n_qubits) const;
    bool operator==(const EnsembleSpec &) const = default;
};

StateVector sample_state(const EnsembleSpec &spec, int n_qubits, Rng &rng);

/// Basis indices with Hamming weight p, ascending.
std::vector<std::uint64_t> sector_indices(int n_qubits, int p);

struct TrainingSet {
    std::vector<StateVector> inputs;
    std::vector<StateVector> targets;
    EnsembleSpec spec;
    std::uint64_t seed = 0;

    std::size_t size() const { return inputs.size(); }
};

/// Draws L inputs from `spec` and maps each through U(theta_g). Deterministic in
/// `seed`, and the first L' < L pairs equal build_training_set(..., L', seed).
TrainingSet build_training_set(const Ansatz &ansatz, const ParameterVector &theta_g, const EnsembleSpec &spec,
                               int L, std::uint64_t seed);

/// sum_j |a_j|^2 popcount(j).
double particle_number_expectation(const StateVector &state);

} // namespace dqfim
