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

#include "dqfim/ensemble.h"

#include <bit>
#include <stdexcept>

namespace dqfim {

EnsembleSpec EnsembleSpec::parse(std::string_view text) {
    EnsembleSpec spec;
    if (text == "haar") {
        spec.kind = Kind::HAAR;
    } else if (text == "product") {
        spec.kind = Kind::PRODUCT;
    } else if (text == "basis") {
        spec.kind = Kind::COMPUTATIONAL_BASIS;
    } else if (text.starts_with("sector:")) {
        spec.kind = Kind::SYMMETRIC_SECTOR;
        std::string rest(text.substr(7));
        std::size_t used = 0;
        try {
            spec.p = std::stoi(rest, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (rest.empty() || used != rest.size() || spec.p < 0) {
            throw std::invalid_argument("bad sector weight in ensemble '" + std::string(text) + "'");
        }
    } else {
        throw std::invalid_argument("unknown ensemble '" + std::string(text) +
                                    "' (expected haar, product, sector:<p> or basis)");
    }
    return spec;
}

std::string EnsembleSpec::str() const {
    switch (kind) {
    case Kind::HAAR: return "haar";
    case Kind::PRODUCT: return "product";
    case Kind::SYMMETRIC_SECTOR: return "sector:" + std::to_string(p);
    case Kind::COMPUTATIONAL_BASIS: return "basis";
    }
    return "unknown";
}

void EnsembleSpec::validate(int n_qubits) const {
    if (kind == Kind::SYMMETRIC_SECTOR && (p < 0 || p > n_qubits)) {
        throw std::invalid_argument("sector weight p=" + std::to_string(p) + " outside [0, " +
                                    std::to_string(n_qubits) + "]");
    }
}

std::vector<std::uint64_t> sector_indices(int n_qubits, int p) {
    std::vector<std::uint64_t> out;
    std::uint64_t dim = std::uint64_t{1} << n_qubits;
    for (std::uint64_t j = 0; j < dim; ++j) {
        if (std::popcount(j) == p) {
            out.push_back(j);
        }
    }
    return out;
}

StateVector sample_state(const EnsembleSpec &spec, int n_qubits, Rng &rng) {
    spec.validate(n_qubits);
    const std::size_t dim = std::size_t{1} << n_qubits;
    switch (spec.kind) {
    case EnsembleSpec::Kind::HAAR: return StateVector::normalized(n_qubits, sample_haar_vector(dim, rng));
    case EnsembleSpec::Kind::PRODUCT: {
        Eigen::VectorXcd v = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(dim));
        for (int q = 0; q < n_qubits; ++q) {
            Eigen::VectorXcd local = sample_haar_vector(2, rng);
            for (std::size_t j = 0; j < dim; ++j) {
                v[static_cast<Eigen::Index>(j)] *= local[(j >> q) & 1];
            }
        }
        return StateVector::normalized(n_qubits, std::move(v));
    }
    case EnsembleSpec::Kind::SYMMETRIC_SECTOR: {
        auto idx = sector_indices(n_qubits, spec.p);
        Eigen::VectorXcd sub = sample_haar_vector(idx.size(), rng);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
        for (std::size_t k = 0; k < idx.size(); ++k) {
            v[static_cast<Eigen::Index>(idx[k])] = sub[static_cast<Eigen::Index>(k)];
        }
        return StateVector::normalized(n_qubits, std::move(v));
    }
    case EnsembleSpec::Kind::COMPUTATIONAL_BASIS: {
        std::uniform_int_distribution<std::uint64_t> pick(0, dim - 1);
        return StateVector::basis(n_qubits, pick(rng));
    }
    }
    throw std::logic_error("unhandled ensemble kind");
}

TrainingSet build_training_set(const Ansatz &ansatz, const ParameterVector &theta_g, const EnsembleSpec &spec,
                               int L, std::uint64_t seed) {
    if (L < 1) {
        throw std::invalid_argument("training set size L must be >= 1");
    }
    TrainingSet set;
    set.spec = spec;
    set.seed = seed;
    Rng rng(seed);
    for (int l = 0; l < L; ++l) {
        set.inputs.push_back(sample_state(spec, ansatz.n_qubits(), rng));
        set.targets.push_back(apply_circuit(ansatz, theta_g, set.inputs.back()));
    }
    return set;
}

double particle_number_expectation(const StateVector &state) {
    double acc = 0.0;
    const auto &a = state.amplitudes();
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        acc += std::norm(a[j]) * std::popcount(static_cast<std::uint64_t>(j));
    }
    return acc;
}

} // namespace dqfim
