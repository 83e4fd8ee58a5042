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

#include <vector>

#include "dqfim/pauli.h"

namespace dqfim {

/// Orthonormal (normalized Hilbert-Schmidt) basis of a real span of Hermitian
/// operators, each standing for the anti-Hermitian element i H.
struct OperatorSpan {
    std::vector<PauliSum> basis;
    bool truncated = false;

    int dim() const { return static_cast<int>(basis.size()); }
};

enum class ClosureStrategy {
    /// Commute each newly admitted element with the generators only. Nested
    /// commutators [g_1, [g_2, ... [g_k-1, g_k]]] already span the algebra, so
    /// this reaches the same span with far fewer brackets.
    kGenerators,
    /// Commute each newly admitted element with every element of the current basis.
    kFullBasis,
};

/// Lie closure span<i H_1, ..., i H_K>_Lie. Stops early and sets `truncated`
/// once a new element would be admitted beyond `cap`.
OperatorSpan lie_closure(const std::vector<PauliSum> &generators, int cap, double tol = 1e-10,
                         ClosureStrategy strategy = ClosureStrategy::kGenerators);

/// True iff R <= dim. Throws if the span is truncated, since then dim is only a
/// lower bound on the algebra dimension.
bool check_rank_bound(int R, const OperatorSpan &span);

} // namespace dqfim
